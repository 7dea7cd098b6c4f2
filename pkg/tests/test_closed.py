import random

import pytest

from braidcomb import closed, slp
from braidcomb.closed import (
    ClosedDecomposition,
    b_k,
    closed_comb,
    closed_comb_stage1,
    f_rewrite,
    format_pi1,
    kernel_params,
    parse_pi1,
    pi1_equal,
    pi1_normal_form,
    project,
    section_rho,
    section_s,
    surface_relator,
    tr_relation,
)
from braidcomb.combing import comb_compressed, normal_forms_equal, words_equal
from braidcomb.errors import BudgetExceeded, InvalidLetter, NotKernel
from braidcomb.presentation import Letter, SurfaceParams, conjugate_letter, parse_word

from wordgen import random_pi1, random_word


def closed_params(g, n):
    return SurfaceParams(g, n=n, closed=True)


def random_kernel_word(rng, params, length):
    return random_word(rng, params, length, strands=range(2, params.n + 1))


def test_b_k():
    assert b_k(closed_params(1, 2), 1) == (Letter(2, 3),)
    assert b_k(closed_params(1, 2), 2) == parse_word("A(2,4) A(3,4)")
    assert b_k(closed_params(2, 3), 3) == parse_word("A(4,7) A(5,7) A(6,7)")


def test_surface_relator():
    assert surface_relator(1) == (-2, 1, 2, -1)
    assert surface_relator(2) == (-4, 3, 4, -3, -2, 1, 2, -1)


def test_section_s_examples():
    p = closed_params(2, 3)
    assert section_s(parse_pi1("a1"), p) == (Letter(1, 5),)
    assert section_s((), p) == ()
    assert section_s((2,), closed_params(1, 2)) == parse_word("A(2,3) A(2,4) A(3,4)")
    assert section_s((-1,), p) == (Letter(1, 5, -1),)


def test_section_rho():
    p = closed_params(2, 3)
    assert section_rho((1,), p) == (Letter(1, 5),)
    assert section_rho((), p) == ()
    assert section_rho((2,), p) == (Letter(2, 5),) + b_k(p, 2) + b_k(p, 3)
    rng = random.Random(2)
    for _ in range(100):
        gamma = random_pi1(rng, 2, rng.randint(0, 20))
        assert pi1_equal(project(section_rho(gamma, p), p), gamma, 2)


def test_project():
    for g in (1, 2, 3):
        for n in (1, 2, 3):
            p = closed_params(g, n)
            product = tuple(x for k in range(1, n + 1) for x in b_k(p, k))
            assert project(product, p) == (2 * g,)
    p = closed_params(1, 3)
    assert project((Letter(1, 4),), p) == ()


def test_section_is_right_inverse_of_projection():
    rng = random.Random(9)
    for g in (1, 2, 3):
        for n in (2, 3):
            p = closed_params(g, n)
            for _ in range(50):
                gamma = random_pi1(rng, g, rng.randint(0, 40))
                assert pi1_normal_form(project(section_s(gamma, p), p), g) == pi1_normal_form(gamma, g)


def test_kernel_params():
    assert kernel_params(closed_params(2, 4)) == SurfaceParams(2, 1, 3)
    with pytest.raises(ValueError):
        kernel_params(closed_params(1, 1))


def test_f_rewrite_examples():
    p = closed_params(1, 3)
    sp = kernel_params(p)
    assert f_rewrite((Letter(1, 4),), p) == (Letter(1, sp.j(1)),)
    assert f_rewrite((Letter(4, 5),), p) == (Letter(3, sp.j(2)),)
    assert f_rewrite((Letter(4, 5, -1),), p) == (Letter(3, sp.j(2), -1),)
    with pytest.raises(NotKernel):
        f_rewrite((Letter(1, 3),), p)


def test_f_rewrite_of_boundary_generator():
    # A(2g+1, j_k) becomes a product of commutators times the inverse strand products
    p = closed_params(1, 3)
    got = f_rewrite((Letter(3, 5),), p)
    assert got == parse_word("A(2,4)^-1 A(1,4) A(2,4) A(1,4)^-1 A(3,4)^-1")
    for x in got:
        assert SurfaceParams(1, 1, 2).is_valid(x)


def test_f_respects_kernel_relations():
    for g in (1, 2):
        for n in (3, 4):
            p = closed_params(g, n)
            sp = kernel_params(p)
            gens = [Letter(x.i, x.j, s) for x in p.generators() if x.j != p.j(1) for s in (1, -1)]
            for a in gens:
                for u in gens:
                    if a.j < u.j:
                        lhs = (a.inverse(), u, a)
                        rhs = conjugate_letter(u, a, p)
                        assert words_equal(f_rewrite(lhs, p), f_rewrite(rhs, p), sp)


def test_f_respects_surface_relations():
    # the closed-surface relation for strands k >= 2 survives the rewrite
    for g in (1, 2):
        for n in (2, 3, 4):
            p = closed_params(g, n)
            sp = kernel_params(p)
            for k in range(2, n + 1):
                lhs, rhs = tr_relation(p, k)
                assert words_equal(f_rewrite(lhs, p), f_rewrite(rhs, p), sp)


def test_pi1_normal_form_basics():
    for g in (1, 2, 3):
        assert pi1_normal_form(surface_relator(g), g) == ()
        assert pi1_normal_form(tuple(-x for x in reversed(surface_relator(g))), g) == ()
    assert pi1_normal_form((2, 1, -2, 1), 1) == (1, 1)
    assert pi1_normal_form((1, 3), 2) == (1, 3)
    assert pi1_normal_form((1, -1, 2), 2) == (2,)
    with pytest.raises(InvalidLetter):
        pi1_normal_form((5,), 2)


def test_pi1_short_words_are_unchanged():
    rng = random.Random(6)
    for g in (2, 3):
        for _ in range(200):
            gamma = tuple(_free(random_pi1(rng, g, g)))
            if len(gamma) <= g:
                assert pi1_normal_form(gamma, g) == gamma


def _free(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def test_conjugated_relator_is_trivial():
    rng = random.Random(12)
    rel = surface_relator(2)
    for _ in range(200):
        gamma = random_pi1(rng, 2, rng.randint(0, 15))
        word = gamma + rel + tuple(-x for x in reversed(gamma))
        assert pi1_normal_form(word, 2) == ()
        assert pi1_equal(gamma + rel, gamma, 2)


def test_pi1_parse_format():
    assert parse_pi1("a1 a2^-1 a4") == (1, -2, 4)
    assert format_pi1((1, -2)) == "a1 a2^-1"
    with pytest.raises(InvalidLetter):
        parse_pi1("a5", 2)


def test_stage1_examples():
    p = closed_params(1, 3)
    first_only = parse_word("A(1,3) A(2,3)^-1")
    assert closed_comb_stage1(first_only, p) == (first_only, ())
    w = parse_word("A(1,4) A(1,3)")
    assert closed_comb_stage1(w, p) == ((Letter(1, 3),), conjugate_letter(Letter(1, 4), Letter(1, 3), p))


def test_stage1_preserves_projection():
    rng = random.Random(5)
    p = closed_params(2, 3)
    for _ in range(50):
        gens = [Letter(x.i, x.j, rng.choice((1, -1))) for x in rng.choices(p.generators(), k=8)]
        first, rest = closed_comb_stage1(gens, p)
        assert project(first, p) == project(gens, p)
        assert all(x.j != p.j(1) for x in rest)


def test_stage1_budget():
    p = closed_params(1, 3)
    w = parse_word("A(3,5) A(3,4)") * 4 + parse_word("A(1,3) A(2,3)^-1") * 12
    with pytest.raises(BudgetExceeded):
        closed_comb_stage1(w, p, budget=50)


def test_closed_comb_of_section_has_trivial_kernel():
    rng = random.Random(3)
    for g, n in ((1, 2), (2, 3)):
        p = closed_params(g, n)
        empty = comb_compressed((), kernel_params(p))
        for _ in range(10):
            gamma = random_pi1(rng, g, 6)
            dec = closed_comb(section_s(gamma, p), p)
            assert dec.gamma == pi1_normal_form(gamma, g)
            assert normal_forms_equal(dec.kernel, empty)


def test_closed_comb_of_kernel_word():
    rng = random.Random(4)
    p = closed_params(2, 3)
    for _ in range(10):
        k = random_kernel_word(rng, p, 6)
        dec = closed_comb(k, p)
        assert dec.gamma == ()
        assert normal_forms_equal(dec.kernel, comb_compressed(f_rewrite(k, p), kernel_params(p)))


def test_closed_comb_round_trip():
    rng = random.Random(17)
    for g, n in ((1, 2), (1, 3), (2, 3)):
        p = closed_params(g, n)
        sp = kernel_params(p)
        for _ in range(15):
            gamma = random_pi1(rng, g, rng.randint(0, 4))
            k = random_kernel_word(rng, p, rng.randint(0, 4))
            dec = closed_comb(section_s(gamma, p) + k, p)
            assert dec.gamma == pi1_normal_form(gamma, g)
            assert normal_forms_equal(dec.kernel, comb_compressed(f_rewrite(k, p), sp))


def test_closed_comb_removes_relator_detours():
    # A relator spelled on strand 1 is the same braid as the kernel side of the
    # closed-surface relation; both spellings must decompose identically.
    rng = random.Random(23)
    for g, n in ((1, 2), (2, 2), (2, 3)):
        p = closed_params(g, n)
        lhs, rhs = tr_relation(p, 1)
        for _ in range(8):
            gamma = random_pi1(rng, g, 3)
            cut = rng.randint(0, len(gamma))
            pre = tuple(Letter(abs(x), p.j(1), 1 if x > 0 else -1) for x in gamma[:cut])
            post = tuple(Letter(abs(x), p.j(1), 1 if x > 0 else -1) for x in gamma[cut:])
            with_relator = closed_comb(pre + lhs + post, p)
            with_kernel = closed_comb(pre + rhs + post, p)
            assert pi1_equal(with_relator.gamma, gamma, g)
            assert with_relator.gamma == with_kernel.gamma
            assert normal_forms_equal(with_relator.kernel, with_kernel.kernel)


def test_single_strand():
    p = closed_params(2, 1)
    dec = closed_comb(parse_word("A(1,5) A(2,5)"), p)
    assert dec.gamma == (1, 2)
    assert dec.kernel is None


def test_decomposition_json_round_trip():
    p = closed_params(1, 3)
    dec = closed_comb(parse_word("A(1,3) A(3,5) A(2,4)^-1"), p)
    back = ClosedDecomposition.from_json(dec.to_json())
    assert back == dec
    assert slp.eval_length(back.kernel.factor(2)) == slp.eval_length(dec.kernel.factor(2))


def test_bounded_params_rejected():
    with pytest.raises(ValueError):
        section_s((1,), SurfaceParams(1, 1, 2))
    with pytest.raises(ValueError):
        closed.project((), SurfaceParams(1, 1, 2))


def test_closed_words_equal():
    rng = random.Random(29)
    for g, n in ((1, 2), (2, 3)):
        p = closed_params(g, n)
        lhs, rhs = tr_relation(p, 1)
        for _ in range(10):
            w = random_word(rng, p, 5)
            t = rng.randint(0, len(w))
            assert closed.closed_words_equal(w[:t] + lhs + w[t:], w[:t] + rhs + w[t:], p)
            x = random_word(rng, p, 1)
            assert not closed.closed_words_equal(w, w[:t] + x + w[t:], p)

"""Command-line front end.

Exit codes: 0 success (``eq``: equal), 1 unequal (``eq`` only), 2 error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import closed, combing, slp
from .errors import BraidCombError, TooLong
from .presentation import SurfaceParams, format_word, free_reduce, parse_word

EXIT_EQUAL, EXIT_UNEQUAL, EXIT_ERROR = 0, 1, 2


@dataclass
class RunConfig:
    params: SurfaceParams
    lam: int = slp.DEFAULT_LAMBDA
    exact_threshold: int = slp.DEFAULT_EXACT_THRESHOLD
    budget: int = 10**6
    seed: str | None = None
    output: str = "text"
    show_eval: bool = False

    @property
    def check(self) -> dict:
        return {"lam": self.lam, "exact_threshold": self.exact_threshold}


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--g", type=int, default=0, help="genus (default 0)")
    common.add_argument("--p", type=int, default=1, help="boundary components (default 1)")
    common.add_argument("--n", type=int, default=None,
                        help="strands (default: smallest n fitting the input)")
    common.add_argument("--closed", action="store_true", help="closed surface (p is ignored)")
    common.add_argument("--lambda", dest="lam", type=int, default=slp.DEFAULT_LAMBDA,
                        help="randomized checks err with probability <= 2^-lambda")
    common.add_argument("--exact-threshold", type=int, default=slp.DEFAULT_EXACT_THRESHOLD,
                        help="decompress instead of fingerprinting up to this length")
    common.add_argument("--budget", type=int, default=10**6,
                        help="letter budget for the exponential paths")
    common.add_argument("--seed", default=None, help="seed (also BRAIDCOMB_SEED)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--show-eval", action="store_true",
                        help="print decompressed factors below the exact threshold")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="braidcomb", parents=[common],
        description="Compressed combing and the word problem for surface pure braids.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("comb", parents=[common], help="combed normal form of a word")
    p.add_argument("word", nargs="?", help="braid word; read from stdin if omitted")

    p = sub.add_parser("eq", parents=[common], help="decide whether two words are equal")
    p.add_argument("words", nargs="*",
                   help="two words; if omitted, stdin lines are compared in pairs")

    p = sub.add_parser("demo", parents=[common], help="Fibonacci programs and the beta_m family")
    p.add_argument("family", choices=["fib", "beta"])
    p.add_argument("parameter", type=int)

    p = sub.add_parser("closed", parents=[common], help="closed-surface section and combing")
    actions = p.add_subparsers(dest="action", required=True)
    for name, what, text in [
            ("section", "braid word of the section applied to a pi_1 word", "pi_1 word such as 'a1 a2^-1'"),
            ("project", "pi_1 word seen by the first strand", "braid word"),
            ("comb", "section part and combed kernel of a braid word", "braid word")]:
        q = actions.add_parser(name, parents=[common], help=what)
        q.add_argument("input", nargs="?", help=f"{text}; read from stdin if omitted")
    return parser


def _config(args, words=()) -> RunConfig:
    closed_mode = args.closed or args.command == "closed"
    n = args.n
    if n is None:
        offset = 2 * args.g if closed_mode else 2 * args.g + args.p - 1
        seconds = [x.j for w in words for x in w]
        n = max([1] + [j - offset for j in seconds])
    params = SurfaceParams(args.g, args.p, n, closed=closed_mode)
    seed = args.seed if args.seed is not None else os.environ.get("BRAIDCOMB_SEED")
    if seed is not None:
        slp.set_seed(seed)
    return RunConfig(params, args.lam, args.exact_threshold, args.budget, seed,
                     "json" if args.json else "text", args.show_eval)


def _read_text(value: str | None, stdin) -> str:
    return value if value is not None else stdin.read().strip()


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2) + "\n")


def _factor_lines(nf: combing.CombedNormalForm, cfg: RunConfig) -> list[str]:
    lines = [f"factor 1: {format_word(nf.factor1) or '1'}"]
    for k, (f, size, length) in enumerate(zip(nf.factors, nf.sizes, nf.eval_lengths), start=2):
        lines.append(f"factor {k}: size {size}, length {length}")
        if cfg.show_eval:
            if length <= cfg.exact_threshold:
                ev = slp.evaluate(f, cfg.exact_threshold)
                lines.append(f"  ev: {format_word(ev) or '1'}")
                lines.append(f"  reduced: {format_word(free_reduce(ev)) or '1'}")
            else:
                lines.append("  ev: (above the exact threshold)")
    return lines


def _with_evaluations(nf: combing.CombedNormalForm, cfg: RunConfig) -> dict:
    data = nf.to_json()
    if cfg.show_eval:
        evs = []
        for f in nf.factors:
            try:
                evs.append(format_word(free_reduce(slp.evaluate(f, cfg.exact_threshold))))
            except TooLong:
                evs.append(None)
        data["reduced_factors"] = evs
    return data


def cmd_comb(args, out, stdin) -> int:
    word = parse_word(_read_text(args.word, stdin))
    cfg = _config(args, [word])
    if cfg.params.closed:
        return _closed_comb(word, cfg, out)
    nf = combing.comb_compressed(word, cfg.params)
    if cfg.output == "json":
        _emit(_with_evaluations(nf, cfg), out)
    else:
        out.write("\n".join(_factor_lines(nf, cfg)) + "\n")
    return 0


def cmd_eq(args, out, stdin) -> int:
    if args.words:
        if len(args.words) != 2:
            raise BraidCombError("eq needs exactly two words")
        texts = list(args.words)
    else:
        texts = [line.strip() for line in stdin if line.strip()]
        if len(texts) % 2:
            raise BraidCombError("stdin must hold an even number of words (compared in pairs)")
    words = [parse_word(t) for t in texts]
    cfg = _config(args, words)
    results = []
    for w1, w2 in zip(words[::2], words[1::2]):
        if cfg.params.closed:
            equal = closed.closed_words_equal(w1, w2, cfg.params, cfg.budget, **cfg.check)
            results.append({"equal": equal})
            continue
        nf1 = combing.comb_compressed(w1, cfg.params)
        nf2 = combing.comb_compressed(w2, cfg.params)
        per = combing.factor_verdicts(nf1, nf2, **cfg.check)
        results.append({"equal": all(per), "factors": per})
    equal = all(r["equal"] for r in results)
    if cfg.output == "json":
        payload = results[0] if len(results) == 1 else {"equal": equal, "pairs": results}
        _emit(payload, out)
    else:
        for r in results:
            out.write(("equal" if r["equal"] else "not equal") + "\n")
    return EXIT_EQUAL if equal else EXIT_UNEQUAL


def cmd_demo(args, out, stdin) -> int:
    cfg = _config(args)
    m = args.parameter
    if m < 1:
        raise BraidCombError("the demo parameter must be >= 1")
    if args.family == "fib":
        A = slp.fibonacci(m)
        report = {"family": "fib", "n": m, "size": A.size, "length": str(slp.eval_length(A))}
        if slp.eval_length(A) <= 80:
            report["word"] = "".join(slp.evaluate(A))
        if cfg.output == "json":
            _emit(report, out)
        else:
            out.write(f"fib {m}: size {report['size']}, length {report['length']}\n")
            if "word" in report:
                out.write(report["word"] + "\n")
        return 0

    params = SurfaceParams(0, 1, 4)
    word = combing.beta_m(m)
    nf = combing.comb_compressed(word, params)
    bound = 2 * 3 ** (m - 1)
    report = {"family": "beta", "m": m, "input_length": len(word), "sizes": nf.sizes,
              "eval_lengths": [str(x) for x in nf.eval_lengths],
              "size_bound": combing.size_bound(params, len(word)),
              "lower_bound": bound}
    status = 0
    try:
        reduced = combing.comb_classical(word, params, cfg.budget)[3]
        report["reduced_length"] = len(reduced)
        report["lower_bound_holds"] = len(reduced) >= bound
    except BraidCombError as e:
        report["reduced_length"] = None
        report["error"] = str(e)
        status = EXIT_ERROR
    if cfg.output == "json":
        _emit(report, out)
    else:
        out.write(f"beta {m}: input length {report['input_length']}\n")
        out.write(f"  program sizes {report['sizes']} (bound {report['size_bound']})\n")
        out.write(f"  evaluation lengths {', '.join(report['eval_lengths'])}\n")
        if report["reduced_length"] is None:
            out.write(f"  reduced factor 4: {report['error']}\n")
        else:
            out.write(f"  reduced factor 4 length {report['reduced_length']} "
                      f">= 2*3^{m - 1} = {bound}: {report['lower_bound_holds']}\n")
    return status


def cmd_closed(args, out, stdin) -> int:
    text = _read_text(args.input, stdin)
    if args.action == "section":
        cfg = _config(args)
        gamma = closed.parse_pi1(text, cfg.params.g)
        w = closed.section_s(gamma, cfg.params)
        if cfg.output == "json":
            _emit({"word": format_word(w)}, out)
        else:
            out.write(format_word(w) + "\n")
        return 0
    word = parse_word(text)
    cfg = _config(args, [word])
    if args.action == "project":
        gamma = closed.project(word, cfg.params)
        if cfg.output == "json":
            _emit({"gamma": closed.format_pi1(gamma)}, out)
        else:
            out.write(closed.format_pi1(gamma) + "\n")
        return 0
    return _closed_comb(word, cfg, out)


def _closed_comb(word, cfg: RunConfig, out) -> int:
    dec = closed.closed_comb(word, cfg.params, cfg.budget)
    if cfg.output == "json":
        _emit(dec.to_json(), out)
    else:
        out.write(f"gamma: {closed.format_pi1(dec.gamma) or '1'}\n")
        if dec.kernel is not None:
            sp = dec.kernel.params
            out.write(f"kernel over g={sp.g}, p={sp.p}, n={sp.n}:\n")
            out.write("\n".join("  " + line for line in _factor_lines(dec.kernel, cfg)) + "\n")
    return 0


COMMANDS = {"comb": cmd_comb, "eq": cmd_eq, "demo": cmd_demo, "closed": cmd_closed}


def main(argv=None, out=None, stdin=None) -> int:
    out = out or sys.stdout
    stdin = stdin or sys.stdin
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out, stdin)
    except (BraidCombError, ValueError) as e:
        sys.stderr.write(f"braidcomb: {e}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""Collects one PASS/FAIL line per acceptance criterion for the run summary."""

LINES: list[str] = []


def report(number, title: str, failures: list[str], elapsed: float, limit: float | None = None) -> str:
    if limit is not None and elapsed >= limit:
        failures = failures + [f"took {elapsed:.1f} s, limit {limit:g} s"]
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} {status}: {title} [{elapsed:.2f} s]"
    if failures:
        line += " -- " + "; ".join(failures[:3])
        if len(failures) > 3:
            line += f" (+{len(failures) - 3} more)"
    print(line)
    LINES.append(line)
    return line

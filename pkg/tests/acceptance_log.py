"""Collects the one-line verdicts printed by the acceptance run."""

LINES = []


def record(number: int, title: str, ok: bool, seconds: float, detail: str = "") -> str:
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}  ({seconds:.2f}s)"
    if detail:
        line += f"  {detail}"
    LINES.append(line)
    print(line)
    return line

"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

LINES: list[str] = []


def record(number: int, title: str, passed: bool, detail: str) -> bool:
    LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {title}: {detail}")
    return passed

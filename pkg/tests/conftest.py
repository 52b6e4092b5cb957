import re

# one-line verdict per end-to-end acceptance check, printed after the run
_CRITERIA = {
    1: "larger k trades neighborhood error for stress on both benchmarks",
    2: "intermediate k gives the best cluster distortion on the block grid",
    3: "eigendecomposition walk counts match iterated multiplication",
    4: "hub-pair worked example: scores 4 and 1, top neighborhood {b}",
    5: "analytic pair gradients match central finite differences",
    6: "full neighborhood with no repulsion matches reference stress SGD",
    7: "trailing objective means decrease; every run stops in budget",
    8: "neighborhood error exact vs brute force; stress and distortion similarity-invariant",
}

_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {}
    for status, label in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL"),
                          ("skipped", "SKIP")):
        for report in terminalreporter.stats.get(status, []):
            match = _PATTERN.search(getattr(report, "nodeid", ""))
            if match and getattr(report, "when", "call") in ("call", "setup"):
                number = int(match.group(1))
                if label == "FAIL" or number not in outcomes:
                    outcomes[number] = label
    if not outcomes:
        return
    terminalreporter.write_sep("-", "acceptance summary")
    for number in sorted(outcomes):
        description = _CRITERIA.get(number, "")
        terminalreporter.write_line(
            f"criterion {number} ({description}): {outcomes[number]}"
        )

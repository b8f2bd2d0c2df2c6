"""Replays the acceptance verdict lines after the run.

Output capture swallows anything the acceptance tests print while they
run, so they record their one-line verdicts in a module-level list and
this hook writes the lines into the terminal summary, where they are
always visible.
"""

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    for name, mod in list(sys.modules.items()):
        if name.rpartition(".")[2] == "test_acceptance":
            lines = getattr(mod, "VERDICT_LINES", ())
            if lines:
                terminalreporter.section("acceptance criteria")
                for line in lines:
                    terminalreporter.write_line(line)

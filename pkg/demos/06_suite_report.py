"""Run the full verification suite on one modulus and print the JSON report.

The same report is produced by ``theta13 suite``.
"""

from theta13 import make_siegel
from theta13.report import SuiteConfig, run_suite

Z = make_siegel(0.1 + 1.1j, 0.2 + 0.3j, -0.1 + 1.4j)
report = run_suite(Z, SuiteConfig(seed=0, paranoid=True))
for name, section in report.sections.items():
    print(f"{name:18s} {section['status']}")
print("overall:", "pass" if report.passed else "fail")
print(report.to_json()[:600], "...")

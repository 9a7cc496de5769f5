"""Local clustering coefficient by mobile agents.

Needs only the first two triangle-counting phases: LCC(v) is
T(v) / (deg * (deg - 1)), doubled under the conventional variant;
degree <= 1 yields 0.
"""

from __future__ import annotations

from fractions import Fraction

from .triangles import TriangleBehavior


class LccBehavior(TriangleBehavior):

    def __init__(self, aid, degree, config):
        super().__init__(aid, degree, config)
        self.lcc = None

    def end_phase(self, name):
        super().end_phase(name)
        if name == "phase2":
            d = self.degree
            if d <= 1:
                self.lcc = Fraction(0)
            else:
                num = 2 * self.tv if self.config.lcc_standard else self.tv
                self.lcc = Fraction(num, d * (d - 1))

"""Regeneration of the published comparison tables."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .baselines import halton_set, hammersley_set, kronecker_set
from .discrepancy import star_disc_dd, xn_embed
from .greedy import GreedyConfig, build_sequence

TABLE1_N = (50, 100, 150, 200, 250)
TABLE1 = {
    "greedy": (0.044, 0.026, 0.018, 0.013, 0.012),
    "halton": (0.067, 0.049, 0.039, 0.022, 0.018),
    "hammersley": (0.048, 0.026, 0.017, 0.014, 0.012),
    "kronecker": (0.083, 0.037, 0.070, 0.026, 0.026),
}
TABLE1_INITIAL = (0.5, 0.95)

TABLE2_N = (10, 25, 50, 100, 150, 200)
TABLE2 = (0.32, 0.12, 0.06, 0.032, 0.022, 0.016)
TABLE2_INITIAL = (0.5, 0.51, 0.52, 0.53, 0.54)

TOLERANCE = {"greedy": 0.005, "halton": 0.002, "hammersley": 0.002, "kronecker": 0.002,
             "table2": 0.01}

BASELINES = ("halton", "hammersley", "kronecker")


@dataclass
class Cell:
    table: int
    column: str
    N: int
    reference: float
    computed: float
    tolerance: float

    @property
    def deviation(self):
        return abs(self.computed - self.reference)

    @property
    def ok(self):
        return self.deviation <= self.tolerance

    def to_row(self):
        return asdict(self) | {"deviation": self.deviation, "pass": self.ok}


def baseline_disc(family, N, index_origin=1):
    if family == "halton":
        P = halton_set(N, (2, 3), index_origin)
    elif family == "hammersley":
        P = hammersley_set(N, 2, index_origin)
    elif family == "kronecker":
        P = kronecker_set(N)
    else:
        raise ValueError(f"unknown baseline {family!r}")
    return star_disc_dd(P).value


def greedy_xn_discrepancies(initial, Ns, config=None):
    config = config or GreedyConfig()
    P, _ = build_sequence(initial, max(Ns), config)
    return [star_disc_dd(xn_embed(P, N)).value for N in Ns]


def table1(columns="all", index_origin=1, config=None):
    cells = []
    if columns in ("all", "greedy"):
        values = greedy_xn_discrepancies(TABLE1_INITIAL, TABLE1_N, config)
        for N, ref, v in zip(TABLE1_N, TABLE1["greedy"], values):
            cells.append(Cell(1, "greedy", N, ref, v, TOLERANCE["greedy"]))
    if columns in ("all", "baselines"):
        for fam in BASELINES:
            for N, ref in zip(TABLE1_N, TABLE1[fam]):
                cells.append(Cell(1, fam, N, ref, baseline_disc(fam, N, index_origin),
                                  TOLERANCE[fam]))
    if not cells:
        raise ValueError(f"unknown column selection {columns!r}")
    return cells


def table2(config=None):
    values = greedy_xn_discrepancies(TABLE2_INITIAL, TABLE2_N, config)
    return [Cell(2, "greedy", N, p, v, TOLERANCE["table2"])
            for N, p, v in zip(TABLE2_N, TABLE2, values)]

from pathlib import Path

from burnside import groups
from burnside.cli import read_generators

FIXTURES = Path(__file__).parent / "fixtures"

_BUILDERS = {
    "C1": lambda: groups.cyclic(1),
    "C2": lambda: groups.cyclic(2),
    "C3": lambda: groups.cyclic(3),
    "C4": lambda: groups.cyclic(4),
    "C6": lambda: groups.cyclic(6),
    "C9": lambda: groups.cyclic(9),
    "C12": lambda: groups.cyclic(12),
    "C15": lambda: groups.cyclic(15),
    "C21": lambda: groups.cyclic(21),
    "C2xC2": lambda: groups.elementary_abelian(2),
    "C2xC4": lambda: groups.direct_product(groups.cyclic(2), groups.cyclic(4)),
    "C2xC2xC2": lambda: groups.elementary_abelian(3),
    "C3xC3": lambda: groups.direct_product(groups.cyclic(3), groups.cyclic(3)),
    "S3": lambda: groups.symmetric(3),
    "D8": lambda: groups.dihedral(8),
    "D10": lambda: groups.dihedral(10),
    "D12": lambda: groups.dihedral(12),
    "Q8": lambda: read_generators(FIXTURES / "q8.perm"),
    "F21": lambda: read_generators(FIXTURES / "f21.perm"),
    "A4": lambda: groups.alternating(4),
    "S4": lambda: groups.symmetric(4),
    "inv(C5)": lambda: groups.semidirect_inversion([5]),
    "inv(C3xC3)": lambda: groups.semidirect_inversion([3, 3]),
    "A5": lambda: groups.alternating(5),
    "S3xC2": lambda: groups.direct_product(groups.symmetric(3), groups.cyclic(2)),
    "S5": lambda: groups.symmetric(5),
    "A6": lambda: groups.alternating(6),
}

_GROUPS = {}


def get_group(name):
    """Shared group objects, so lattices and tables are built once per session."""
    if name not in _GROUPS:
        G = _BUILDERS[name]()
        G.name = name
        _GROUPS[name] = G
    return _GROUPS[name]


SMALL_POOL = [n for n in _BUILDERS if n not in ("S5", "A6")]
POOL = list(_BUILDERS)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

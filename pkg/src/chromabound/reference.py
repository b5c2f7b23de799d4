"""Reference values for the five-vertex computation and the degree-four chain.

Each row names one isomorphism class of 5-vertex graphs, gives a concrete
labelled construction (an edge list, or the complement of another row) and
the expected coefficient lists, constant term first, for ``R(y)`` and
``W(z) = (z+4)^7 (z+1) - R(z+4)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, canonical_key, complement
from .poly import IntPoly


@dataclass(frozen=True)
class ReferenceRow:
    name: str
    latex: str
    edges: tuple[tuple[int, int], ...] | None = None
    complement_of: str | None = None
    r: tuple[int, ...] = ()
    w: tuple[int, ...] = ()

    @property
    def r_poly(self) -> IntPoly:
        return IntPoly(self.r)

    @property
    def w_poly(self) -> IntPoly:
        return IntPoly(self.w)


ROWS: tuple[ReferenceRow, ...] = (
    ReferenceRow('5K_1', '5K_1', edges=(), r=(1, -5, 10, -11, 10, -10, 10, -5, 1), w=(51, 6597, 10170, 6571, 2270, 442, 46, 2)),
    ReferenceRow('K_2 ∪ 3K_1', 'K_2 \\cup 3K_1', edges=((0, 1),), r=(1, -1, -4, 5, 9, -20, 16, -6, 1), w=(1539, 10801, 14952, 9451, 3271, 644, 68, 3)),
    ReferenceRow('P_3 ∪ 2K_1', 'P_3 \\cup 2K_1', edges=((0, 1), (1, 2)), r=(1, 0, -3, -10, 38, -43, 24, -7, 1), w=(2223, 13048, 17851, 11402, 4022, 811, 88, 4)),
    ReferenceRow('K_3 ∪ 2K_1', 'K_3 \\cup 2K_1', edges=((0, 1), (0, 2), (1, 2)), r=(4, -13, 29, -71, 102, -78, 33, -8, 1), w=(4640, 17525, 21751, 13479, 4738, 966, 107, 5)),
    ReferenceRow('K_{1,3} ∪ K_1', 'K_{1, 3} \\cup K_1', edges=((0, 1), (0, 2), (0, 3)), r=(1, 9, -29, 17, 26, -41, 24, -7, 1), w=(1899, 12463, 17425, 11247, 3994, 809, 88, 4)),
    ReferenceRow('K_{1,4}', 'K_{1, 4}', edges=((0, 1), (0, 2), (0, 3), (0, 4)), r=(0, 14, -39, 26, 22, -40, 24, -7, 1), w=(1464, 11850, 17071, 11142, 3978, 808, 88, 4)),
    ReferenceRow('2K_2 ∪ K_1', '2K_2 \\cup K_1', edges=((0, 1), (2, 3)), r=(1, 13, -34, 18, 23, -37, 23, -7, 1), w=(2667, 14243, 18986, 11934, 4157, 829, 89, 4)),
    ReferenceRow('P_4 ∪ K_1', 'P_4 \\cup K_1', edges=((0, 1), (1, 2), (2, 3)), r=(2, 5, -1, -49, 93, -75, 33, -8, 1), w=(2874, 15155, 20461, 13121, 4687, 963, 107, 5)),
    ReferenceRow('K_3+leaf ∪ K_1', 'K_3 + \\text{ leaf } \\cup K_1', edges=((0, 1), (0, 2), (1, 2), (2, 3)), r=(5, -6, 21, -77, 111, -80, 33, -8, 1), w=(4867, 18126, 22247, 13661, 4769, 968, 107, 5)),
    ReferenceRow('C_4 ∪ K_1', 'C_4 \\cup K_1', edges=((0, 1), (1, 2), (2, 3), (0, 3)), r=(5, -11, 57, -155, 190, -121, 44, -9, 1), w=(2391, 14931, 21067, 13915, 5110, 1081, 124, 6)),
    ReferenceRow('co-(K_{1,4}+e)', '\\overline{K_{1, 4} + e}', complement_of='K_{1,4}+e', r=(10, -18, 36, -86, 113, -80, 33, -8, 1), w=(4734, 17938, 22148, 13638, 4767, 968, 107, 5)),
    ReferenceRow('K_4 ∪ K_1', 'K_4 \\cup K_1', edges=((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)), r=(21, -28, 17, -27, 50, -45, 23, -7, 1), w=(6155, 19364, 22003, 12827, 4290, 837, 89, 4)),
    ReferenceRow('P_3 ∪ K_2', 'P_3 \\cup K_2', edges=((0, 1), (1, 2), (3, 4)), r=(0, 23, -30, -28, 80, -69, 32, -8, 1), w=(3204, 16153, 21486, 13628, 4820, 981, 108, 5)),
    ReferenceRow('fork', '\\text{fork}', edges=((0, 1), (0, 2), (0, 3), (3, 4)), r=(0, 28, -37, -32, 91, -75, 33, -8, 1), w=(2784, 15116, 20485, 13136, 4689, 963, 107, 5)),
    ReferenceRow('K_{1,4}+e', 'K_{1, 4} + e', edges=((0, 1), (0, 2), (0, 3), (0, 4), (1, 2)), r=(0, 8, 16, -87, 118, -81, 33, -8, 1), w=(4768, 18120, 22340, 13719, 4782, 969, 107, 5)),
    ReferenceRow('P_5', 'P_5', edges=((0, 1), (1, 2), (2, 3), (3, 4)), r=(0, 16, 29, -148, 186, -117, 43, -9, 1), w=(3312, 16840, 22675, 14612, 5274, 1101, 125, 6)),
    ReferenceRow('bull', '\\text{bull}', edges=((0, 1), (0, 2), (1, 2), (0, 3), (1, 4)), r=(0, 21, -13, -64, 110, -80, 33, -8, 1), w=(4732, 18003, 22221, 13664, 4770, 968, 107, 5)),
    ReferenceRow('C_4+leaf', 'C_4 + \\text{ leaf}', edges=((0, 1), (1, 2), (2, 3), (0, 3), (0, 4)), r=(0, 11, 50, -179, 207, -124, 44, -9, 1), w=(2676, 15605, 21650, 14147, 5153, 1084, 124, 6)),
    ReferenceRow('co-(K_3+leaf ∪ K_1)', '\\overline{K_3 + \\text{ leaf } \\cup K_1}', complement_of='K_3+leaf ∪ K_1', r=(0, 6, 18, -84, 114, -80, 33, -8, 1), w=(4552, 17706, 22046, 13620, 4766, 968, 107, 5)),
    ReferenceRow('K_{2,3}', 'K_{2, 3}', edges=((0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)), r=(0, 0, 73, -199, 219, -129, 45, -9, 1), w=(1584, 13576, 20075, 13495, 5001, 1065, 123, 6)),
    ReferenceRow('co-(K_3 ∪ 2K_1)', '\\overline{K_3 \\cup 2K_1}', complement_of='K_3 ∪ 2K_1', r=(0, 0, 43, -121, 137, -87, 34, -8, 1), w=(3728, 16216, 20897, 13129, 4643, 951, 106, 5)),
    ReferenceRow('C_5', 'C_5', edges=((0, 1), (1, 2), (2, 3), (3, 4), (0, 4)), r=(0, 0, 415, -512, 374, -180, 55, -10, 1), w=(4112, 18696, 24353, 15648, 5706, 1212, 141, 7)),
    ReferenceRow('co-P_5', '\\overline{P_5}', complement_of='P_5', r=(0, 0, 85, -227, 233, -130, 44, -9, 1), w=(4720, 18664, 23535, 14739, 5247, 1090, 124, 6)),
    ReferenceRow('co-(P_4 ∪ K_1)', '\\overline{P_4 \\cup K_1}', complement_of='P_4 ∪ K_1', r=(0, 0, 36, -106, 127, -83, 33, -8, 1), w=(5440, 19136, 22964, 13914, 4813, 971, 107, 5)),
    ReferenceRow('co-(P_3 ∪ K_2)', '\\overline{P_3 \\cup K_2}', complement_of='P_3 ∪ K_2', r=(0, 0, 21, -90, 123, -85, 34, -8, 1), w=(3632, 15928, 20611, 13002, 4617, 949, 106, 5)),
    ReferenceRow('co-(P_3 ∪ 2K_1)', '\\overline{P_3 \\cup 2K_1}', complement_of='P_3 ∪ 2K_1', r=(0, 0, -1, -36, 66, -52, 24, -7, 1), w=(5904, 18632, 21233, 12420, 4174, 820, 88, 4)),
    ReferenceRow('co-(2K_2 ∪ K_1)', '\\overline{2K_2 \\cup K_1}', complement_of='2K_2 ∪ K_1', r=(0, 0, 0, -17, 44, -45, 24, -7, 1), w=(3136, 14384, 18636, 11633, 4056, 813, 88, 4)),
    ReferenceRow('K_5-e', 'K_5 - e', edges=((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)), r=(0, 0, 0, -42, 57, -36, 17, -6, 1), w=(4480, 15072, 17304, 10010, 3303, 636, 67, 3)),
    ReferenceRow('K_5', 'K_5', edges=((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)), r=(0, 0, 0, -75, 109, -55, 15, -5, 1), w=(4544, 11280, 11044, 5851, 1871, 367, 41, 2)),
    ReferenceRow('K_3 ∪ K_2', 'K_3 \\cup K_2', edges=((0, 1), (0, 2), (1, 2), (3, 4)), r=(0, 12, 41, -157, 183, -114, 42, -9, 1), w=(5504, 20252, 24979, 15469, 5457, 1122, 126, 6)),
    ReferenceRow('co-(C_4+leaf)', '\\overline{C_4 + \\text{ leaf}}', complement_of='C_4+leaf', r=(0, 12, 60, -198, 213, -123, 43, -9, 1), w=(5264, 19764, 24492, 15190, 5367, 1107, 125, 6)),
    ReferenceRow('co-fork', '\\overline{\\text{fork}}', complement_of='fork', r=(0, 15, 3, -81, 117, -81, 33, -8, 1), w=(4820, 18185, 22377, 13729, 4783, 969, 107, 5)),
    ReferenceRow('co-(K_{1,3} ∪ K_1)', '\\overline{K_{1, 3} \\cup K_1}', complement_of='K_{1,3} ∪ K_1', r=(0, 14, -23, -12, 48, -45, 23, -7, 1), w=(6200, 19434, 22055, 12844, 4292, 837, 89, 4)),
    ReferenceRow('co-(C_4 ∪ K_1)', '\\overline{C_4 \\cup K_1}', complement_of='C_4 ∪ K_1', r=(0, 0, 85, -217, 222, -125, 43, -9, 1), w=(5872, 20744, 25111, 15385, 5398, 1109, 125, 6)),
)

# cofactors of Q_0 after each single-vertex step of the degree-four chain,
# with the (exponent of y in B, r, N_r) used at that step
CHAIN_STEPS: tuple[tuple[int, int, int], ...] = ((2, 2, 7), (3, 2, 7), (4, 1, 1), (5, 1, 1))
CHAIN_COFACTORS: tuple[tuple[int, ...], ...] = (
    (7, 0, -2, 1),
    (-14, 14, 4, -4, 1),
    (14, -27, 10, 8, -5, 1),
    (-14, 41, -36, 2, 13, -6, 1),
)
CHAIN_TARGET: tuple[int, ...] = (0, 0, 0, 0, 0, -3, 1)

FIVE_VERTEX_CLASSES = 34
RAMSEY44_CRITICAL_13 = 525
EDGE_CRITICAL_5_UP_TO_12 = 151948


def row_by_name(name: str) -> ReferenceRow:
    for row in ROWS:
        if row.name == name:
            return row
    raise KeyError(name)


def row_graph(row: ReferenceRow) -> Graph:
    if row.edges is not None:
        return Graph.from_edges(5, row.edges)
    assert row.complement_of is not None
    return complement(row_graph(row_by_name(row.complement_of)))


@lru_cache(maxsize=None)
def label_map() -> dict[str, ReferenceRow]:
    """Canonical key of each named graph to its row; fails if two names collide."""
    out: dict[str, ReferenceRow] = {}
    for row in ROWS:
        key = canonical_key(row_graph(row))
        if key in out:
            raise ValueError(f"{row.name} and {out[key].name} are isomorphic")
        out[key] = row
    return out

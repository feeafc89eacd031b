"""Reference data: the D-finite 2D classes, the D-finite 3D classes and a few 3D sequences.

Shapes are (order, degree) of the minimal recurrence, differential equation and
algebraic equation (degree in T, degree in t); None marks "no algebraic equation".
Step sets are bitstrings in the lexicographic convention of :mod:`walkclassifier.walks`.
Asymptotics a_n ~ kappa rho^n n^alpha are s-expressions for :mod:`walkclassifier.asympt`.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TableRow:
    tag: str
    steps: tuple[str, ...]
    first_terms: tuple[int, ...]
    rec: tuple[int, int]
    ode: tuple[int, int]
    alg: tuple[int, int] | None
    rho: str | None = None
    alpha: str | None = None
    kappa: str | None = None

    @property
    def algebraic(self) -> bool:
        return self.alg is not None


TABLE_2D: tuple[TableRow, ...] = (
    TableRow("A000012", ("00000001",), (1, 1, 1, 1, 1, 1, 1, 1), (1, 0), (1, 1), (1, 1),
             "1", "0", "1"),
    TableRow("A000079", ("00000011",), (1, 2, 4, 8, 16, 32, 64, 128), (1, 0), (1, 1), (1, 1),
             "2", "0", "1"),
    TableRow("A001405", ("00000101",), (1, 1, 2, 3, 6, 10, 20, 35), (2, 1), (2, 3), (2, 2),
             "2", "-1/2", "(/ (sqrt 2) (gamma 1/2))"),
    TableRow("A000244", ("00001011",), (1, 3, 9, 27, 81, 243, 729, 2187), (1, 0), (1, 1), (1, 1),
             "3", "0", "1"),
    TableRow("A001006", ("00110010",), (1, 1, 2, 4, 9, 21, 51, 127), (2, 1), (2, 3), (2, 2),
             "3", "-3/2", "(/ (* 3 (sqrt 3)) (* 2 (gamma 1/2)))"),
    TableRow("A005773", ("00000111",), (1, 2, 5, 13, 35, 96, 267, 750), (2, 1), (2, 3), (2, 2),
             "3", "-1/2", "(/ (sqrt 3) (gamma 1/2))"),
    TableRow("A126087", ("00010101",), (1, 1, 3, 5, 15, 29, 87, 181), (3, 1), (2, 5), (2, 2),
             "(^ 2 3/2)", "-3/2", "(/ (* 12 (sqrt 2)) (gamma 1/2))"),
    TableRow("A151255", ("10001100",), (1, 1, 2, 3, 8, 15, 39, 77), (6, 8), (4, 16), None,
             "(^ 2 3/2)", "-2", "(/ (* 24 (sqrt 2)) pi)"),
    TableRow("A151265", ("01010001",), (1, 1, 3, 7, 17, 47, 125, 333), (6, 4), (4, 9), (6, 8),
             "3", "-3/4", "(/ (* 2 (sqrt 2)) (gamma 1/4))"),
    TableRow("A151266", ("00110001",), (1, 1, 3, 7, 19, 49, 139, 379), (7, 10), (5, 16), None,
             "3", "-1/2", "(/ (sqrt 3) (* 2 (gamma 1/2)))"),
    TableRow("A151278", ("10001010",), (1, 2, 4, 10, 26, 66, 178, 488), (7, 4), (4, 12), (6, 8),
             "3", "-3/4", "(/ (* 3 (sqrt 3)) (* (sqrt 2) (gamma 1/4)))"),
    TableRow("A151281", ("00001101",), (1, 2, 6, 16, 48, 136, 408, 1184), (3, 1), (2, 5), (2, 2),
             "3", "0", "1/2"),
    TableRow("A005558", ("00111100",), (1, 1, 3, 6, 20, 50, 175, 490), (2, 3), (3, 5), None,
             "4", "-2", "(/ 8 pi)"),
    TableRow("A005566", ("01011010",), (1, 2, 6, 18, 60, 200, 700, 2450), (2, 2), (3, 4), None,
             "4", "-1", "(/ 4 pi)"),
    TableRow("A018224", ("10100101",), (1, 1, 4, 9, 36, 100, 400, 1225), (2, 3), (3, 5), None,
             "4", "-1", "(/ 2 pi)"),
    TableRow("A060899", ("00011101",), (1, 2, 8, 24, 96, 320, 1280, 4480), (2, 1), (2, 3), (2, 2),
             "4", "-1/2", "(/ (sqrt 2) (gamma 1/2))"),
    TableRow("A060900", ("10011001",), (1, 2, 7, 21, 78, 260, 988, 3458), (2, 3), (3, 5), (8, 9),
             "4", "-2/3", "(/ (* 4 (sqrt 3)) (* 3 (gamma 1/3)))"),
    TableRow("A128386", ("10010101",), (1, 1, 4, 7, 28, 58, 232, 523), (3, 1), (2, 5), (2, 2),
             "(* 2 (sqrt 3))", "-3/2", "(/ (* 6 (sqrt 2)) (gamma 1/2))"),
    TableRow("A129637", ("00001111",), (1, 3, 11, 41, 157, 607, 2367, 9277), (3, 1), (2, 5), (2, 2),
             "4", "0", "1/2"),
    TableRow("A151261", ("10011100",), (1, 1, 3, 5, 17, 34, 121, 265), (5, 8), (4, 15), None,
             "(* 2 (sqrt 3))", "-2", "(/ (* 12 (sqrt 3)) pi)"),
    TableRow("A151282", ("00010111",), (1, 2, 6, 18, 58, 190, 638, 2170), (3, 1), (2, 5), (2, 2),
             "B", "-3/2", "(/ (* (^ A 2) (^ B 3/2)) (* (^ 2 3/4) (gamma 1/2)))"),
    TableRow("A151291", ("00111001",), (1, 2, 7, 23, 84, 301, 1127, 4186), (6, 10), (5, 15), None,
             "4", "-1/2", "(/ 4 (* 3 (gamma 1/2)))"),
    TableRow("A151275", ("10110101",), (1, 1, 5, 13, 61, 199, 939, 3389), (9, 18), (5, 24), None,
             "(sqrt 24)", "-2", "(/ (* 12 (sqrt 30)) pi)"),
    TableRow("A151287", ("10111010",), (1, 2, 6, 21, 76, 290, 1148, 4627), (7, 11), (5, 19), None,
             "(* 2 A)", "-2", "(/ (* (sqrt 8) (^ A 7/2)) pi)"),
    TableRow("A151292", ("10010111",), (1, 2, 7, 23, 85, 314, 1207, 4682), (3, 1), (2, 5), (2, 2),
             "D", "-3/2", "(/ (* (^ 3 1/4) (^ C 2) (^ D 3/2)) (* 8 (gamma 1/2)))"),
    TableRow("A151302", ("10100111",), (1, 2, 8, 29, 129, 535, 2467, 10844), (9, 18), (5, 24), None,
             "5", "-1/2", "(/ (sqrt 5) (* 3 (sqrt 2) (gamma 1/2)))"),
    TableRow("A151307", ("01011101",), (1, 2, 9, 34, 151, 659, 2999, 13714), (8, 15), (5, 20), None,
             "5", "-1/2", "(/ (sqrt 5) (* 2 (sqrt 2) (gamma 1/2)))"),
    TableRow("A151318", ("00011111",), (1, 3, 13, 55, 249, 1131, 5253, 24543), (2, 1), (2, 3), (2, 2),
             "5", "-1/2", "(/ (sqrt 5/2) (gamma 1/2))"),
    TableRow("A129400", ("01111110",), (1, 2, 8, 32, 144, 672, 3264, 16256), (2, 1), (2, 3), (2, 2),
             "6", "-3/2", "(/ (* 3 (sqrt 3)) (* 2 (gamma 1/2)))"),
    TableRow("A151297", ("11011110",), (1, 2, 7, 26, 105, 444, 1944, 8728), (7, 11), (5, 18), None,
             "(* 2 C)", "-2", "(/ (* (sqrt 3) (^ C 7/2)) (* 2 pi))"),
    TableRow("A151312", ("10111101",), (1, 2, 10, 39, 210, 960, 5340, 26250), (4, 5), (3, 8), None,
             "6", "-1", "(/ (sqrt 6) pi)"),
    TableRow("A151323", ("11011011",), (1, 3, 14, 67, 342, 1790, 9580, 52035), (2, 1), (2, 3), (4, 4),
             "6", "-3/4", "(/ (* (sqrt 2) (^ 3 3/4)) (gamma 1/4))"),
    TableRow("A151326", ("01011111",), (1, 3, 15, 74, 392, 2116, 11652, 64967), (7, 14), (5, 18), None,
             "6", "-1/2", "(/ (* 2 (sqrt 3)) (* 3 (gamma 1/2)))"),
    TableRow("A151314", ("11110111",), (1, 2, 11, 49, 277, 1479, 8679, 49974), (9, 18), (5, 24), None,
             "(* 2 F)", "-2", "(/ (* E (^ F 7/2)) (* 5 (sqrt 95) pi))"),
    TableRow("A151329", ("10111111",), (1, 3, 16, 86, 509, 3065, 19088, 120401), (9, 18), (5, 24), None,
             "7", "-1/2", "(/ (sqrt 7/3) (* 3 (gamma 1/2)))"),
    TableRow("A151331", ("11111111",), (1, 3, 18, 105, 684, 4550, 31340, 219555), (3, 4), (3, 6), None,
             "8", "-1", "(/ 8 (* 3 pi))"),
)


TABLE_3D_ALGEBRAIC: tuple[TableRow, ...] = (
    TableRow("A025237", ("00001000000000001100100100", "00000001000000001100100100"), (1, 1, 4, 10, 37, 121, 451, 1639), (2, 1), (2, 3), (2, 2)),
    TableRow("A149576", ("00001000010010100000000001", "00000001010010100000000001"), (1, 1, 5, 15, 51, 199, 755, 2789), (11, 22), (7, 31), (12, 17)),
    TableRow("A149847", ("10010010000000001000010000", "10010010000000001000000010"), (1, 2, 4, 14, 46, 134, 502, 1820), (8, 6), (4, 16), (6, 9)),
)


TABLE_3D_TRANSCENDENTAL: tuple[TableRow, ...] = (
    TableRow("A148060", ("10010010000000001100000000", "10010010000000001000100000", "10010010100000000000010000", "10010010100000000000000010"), (1, 1, 2, 3, 12, 25, 77, 161), (9, 17), (5, 28), None),
    TableRow("A148438", ("00000000110010100000010000", "00000100010010100000000010", "00000000110010100000000010"), (1, 1, 2, 6, 15, 43, 143, 437), (7, 10), (5, 17), None),
    TableRow("A149090", ("10000000000000001100100100", "00110100100000000000000010", "00000010000000001100100100"), (1, 1, 4, 7, 34, 73, 349, 817), (9, 17), (5, 28), None),
    TableRow("A149589", ("00001000000000000100100101", "00000001000000000100100101"), (1, 1, 5, 15, 57, 205, 809, 3119), (10, 21), (6, 29), None),
    TableRow("A005817", ("00000100000010010010000000",), (1, 1, 2, 4, 10, 25, 70, 196), (2, 2), (3, 4), None),
    TableRow("A148005", ("00000010010001000000100000",), (1, 1, 2, 3, 8, 15, 44, 91), (5, 8), (4, 15), None),
    TableRow("A148052", ("00000010010001100100000000",), (1, 1, 2, 3, 10, 20, 63, 133), (7, 18), (6, 27), None),
    TableRow("A148068", ("10000010000001000100000100",), (1, 1, 2, 3, 12, 25, 87, 189), (7, 17), (6, 25), None),
    TableRow("A148072", ("00000100010000100000010000",), (1, 1, 2, 4, 9, 21, 56, 148), (12, 57), (10, 69), None),
    TableRow("A148162", ("00001000000001000100000100",), (1, 1, 2, 4, 11, 31, 91, 267), (4, 3), (3, 6), None),
    TableRow("A148284", ("00000100010010100000010000",), (1, 1, 2, 5, 12, 32, 97, 282), (14, 57), (10, 71), None),
    TableRow("A148331", ("00000010110100000000010000",), (1, 1, 2, 5, 14, 42, 137, 464), (11, 43), (9, 53), None),
    TableRow("A148507", ("00000010010011000000100000",), (1, 1, 3, 5, 17, 34, 126, 279), (4, 6), (4, 11), None),
    TableRow("A148525", ("00010000010001100000100000",), (1, 1, 3, 5, 19, 39, 155, 349), (7, 16), (6, 25), None),
    TableRow("A148548", ("10000000010001100000000100",), (1, 1, 3, 5, 21, 44, 179, 405), (7, 19), (6, 28), None),
    TableRow("A148689", ("00000100010000100000001000",), (1, 1, 3, 7, 23, 64, 223, 687), (8, 25), (8, 31), None),
    TableRow("A148703", ("00001000000001000100100100",), (1, 1, 3, 7, 23, 71, 246, 848), (4, 3), (3, 6), None),
    TableRow("A148790", ("00000000100110000000001000",), (1, 1, 3, 8, 25, 77, 257, 853), (6, 12), (5, 18), None),
    TableRow("A148934", ("00000001010100000000101000",), (1, 1, 3, 9, 28, 100, 365, 1365), (5, 5), (4, 11), None),
    TableRow("A149279", ("00000100010010100000001000",), (1, 1, 4, 11, 44, 133, 585, 2067), (14, 62), (10, 75), None),
    TableRow("A149290", ("00001000000000101101000000",), (1, 1, 4, 11, 45, 166, 690, 2855), (11, 53), (9, 61), None),
    TableRow("A149363", ("00000000100110001001000000",), (1, 1, 4, 12, 44, 160, 635, 2520), (7, 16), (6, 24), None),
    TableRow("A149632", ("00000000110010100000000001",), (1, 1, 5, 15, 69, 217, 1061, 3923), (7, 11), (5, 16), None),
    TableRow("A149713", ("00001000000000000101000101",), (1, 1, 5, 17, 71, 289, 1269, 5529), (8, 22), (7, 29), None),
    TableRow("A150054", ("00001000010001100000010000",), (1, 2, 6, 18, 62, 215, 809, 3045), (12, 39), (9, 52), None),
    TableRow("A150370", ("00000100010001100000001000",), (1, 2, 7, 23, 94, 366, 1572, 6510), (14, 62), (10, 75), None),
    TableRow("A150410", ("00000000100111000000001000",), (1, 2, 7, 24, 94, 370, 1537, 6440), (4, 6), (4, 11), None),
    TableRow("A150471", ("00001000001010001000010000",), (1, 2, 7, 25, 99, 402, 1687, 7242), (12, 33), (8, 42), None),
    TableRow("A150499", ("00000001001011000000000010",), (1, 2, 7, 25, 101, 414, 1773, 7680), (14, 48), (9, 61), None),
    TableRow("A150764", ("00000100000110001000001000",), (1, 2, 8, 30, 126, 530, 2330, 10290), (7, 13), (6, 19), None),
    TableRow("A150950", ("00001000000000000100101001",), (1, 2, 9, 35, 155, 677, 3095, 14118), (8, 23), (7, 29), None),
    TableRow("A151053", ("00001000010001010000010000",), (1, 3, 10, 37, 144, 586, 2454, 10491), (14, 38), (9, 48), None),
)


# sequences displayed with their 3D step sets (first terms of G(t;1,1,1))
SEQUENCES_3D = {
    "A026378": ("00000000000011010000010010", (1, 4, 17, 75, 339, 1558, 7247, 34016, 160795, 764388)),
    "A005817": ("00000100000010010010000000", (1, 1, 2, 4, 10, 25, 70, 196, 588, 1764)),
    "A149080": ("00100010000000000100000001", (1, 1, 4, 7, 28, 70, 280, 787, 3148, 9526, 38104)),
    "A149424": ("00001000001010000000000001", (1, 1, 4, 13, 40, 136, 496, 1753, 6256, 22912, 85216)),
}

# step sets for which no equation is expected at desk bounds
STUBBORN_3D = ("A149080", "A149424")

KREWERAS_TERMS = (1, 1, 3, 7, 17, 47, 125, 333, 939, 2597, 7183, 20505, 57859, 163201, 469795)

# campaign totals
COUNTS_2D = {"step_sets": 256, "classes": 92, "dfinite": 36, "algebraic": 19, "transcendental": 17}
COUNTS_3D = {"step_sets": 83682, "classes": 3334, "dfinite": 134, "algebraic": 50, "reversal_gaps": 42}

# a fast subset of the 2D table used for continuous integration
PINNED_2D = ("A151265", "A151278", "A018224", "A060900", "A151331",
             "A000079", "A001405", "A005566", "A151323", "A151312")


def row_2d(tag: str) -> TableRow:
    for r in TABLE_2D:
        if r.tag == tag:
            return r
    raise KeyError(tag)


def row_by_tag(tag: str) -> TableRow:
    for table in (TABLE_2D, TABLE_3D_ALGEBRAIC, TABLE_3D_TRANSCENDENTAL):
        for r in table:
            if r.tag == tag:
                return r
    raise KeyError(tag)

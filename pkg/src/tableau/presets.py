"""Embedded schemes addressable by name.

Rational coefficients are written as exact fractions and converted to floats
once. The five-stage fourth-order scheme is defined natively in Shu-Osher form
by its published coefficients, with one alpha per row closed so the row sums
to exactly 1.0; its Butcher tableau is derived from that closed form.
"""

from fractions import Fraction as Q

from src.models.scheme import ButcherTableau, Scheme, ShuOsherForm, to_ragged
from src.tableau.algebra import shu_osher_to_butcher


def _tableau(name: str, a: list[list[Q]], b: list[Q]) -> ButcherTableau:
    return ButcherTableau.from_rows(
        [[float(x) for x in row] for row in a], [float(x) for x in b], name=name
    )


# ============================================================================
# Five-stage, fourth-order SSP scheme
# ============================================================================

_PUBLISHED: dict[str, float] = {
    "d1": 0.391752226571890,
    "p21": 0.555629506348765,
    "d2": 0.368410593050371,
    "p30": 0.620101851488403,
    "d3": 0.251891774271694,
    "p43": 0.821920045606868,
    "d4": 0.544974750228521,
    "p52": 0.517231671970585,
    "p53": 0.096059710526147,
    "d53": 0.063692468666290,
    "d54": 0.226007483236906,
}


def _close_rows(k: dict[str, float]) -> dict[str, float]:
    """Fill in the remaining alpha of each row so every row sums to exactly 1.0.

    The closing entry is 1 - x with x in [1/2, 1], which is exact in binary
    floating point, so (1 - x) + x rounds to 1.0 with no residue. The rounded
    published digits of the last row sum to 1 + 8.9e-16 otherwise.
    """
    closed = dict(k)
    closed["p20"] = 1.0 - k["p21"]
    closed["p32"] = 1.0 - k["p30"]
    closed["p40"] = 1.0 - k["p43"]
    closed["p54"] = 1.0 - (k["p52"] + k["p53"])
    return closed


RK4_5STAGE_COEFFICIENTS: dict[str, float] = _close_rows(_PUBLISHED)


def _rk4_5stage_form() -> ShuOsherForm:
    k = RK4_5STAGE_COEFFICIENTS
    alpha = [
        [],
        [1.0],
        [k["p20"], k["p21"]],
        [k["p30"], 0.0, k["p32"]],
        [k["p40"], 0.0, 0.0, k["p43"]],
        [0.0, 0.0, k["p52"], k["p53"], k["p54"]],
    ]
    beta = [
        [],
        [k["d1"]],
        [0.0, k["d2"]],
        [0.0, 0.0, k["d3"]],
        [0.0, 0.0, 0.0, k["d4"]],
        [0.0, 0.0, 0.0, k["d53"], k["d54"]],
    ]
    return ShuOsherForm(s=5, alpha=to_ragged(alpha), beta=to_ragged(beta), name="rk4-5stage")


def _build_presets() -> dict[str, Scheme]:
    rk4_form = _rk4_5stage_form()
    schemes = [
        Scheme(
            name="forward-euler",
            tableau=_tableau("forward-euler", [], [Q(1)]),
            order=1,
        ),
        Scheme(
            name="rk2-ssp",
            tableau=_tableau("rk2-ssp", [[Q(1)]], [Q(1, 2), Q(1, 2)]),
            order=2,
        ),
        Scheme(
            name="rk3-ssp",
            tableau=_tableau(
                "rk3-ssp",
                [[Q(1)], [Q(1, 4), Q(1, 4)]],
                [Q(1, 6), Q(1, 6), Q(2, 3)],
            ),
            order=3,
        ),
        Scheme(
            name="rk3-nondissipative",
            tableau=_tableau(
                "rk3-nondissipative",
                [[Q(1)], [Q(1), Q(1)]],
                [Q(2, 3), Q(1, 6), Q(1, 6)],
            ),
            # three stages but only second order: sum b_i c_i^2 = 5/6
            order=2,
        ),
        Scheme(
            name="rk4-5stage",
            tableau=shu_osher_to_butcher(rk4_form),
            shu_osher=rk4_form,
            order=4,
        ),
        Scheme(
            name="classic-rk4",
            tableau=_tableau(
                "classic-rk4",
                [[Q(1, 2)], [Q(0), Q(1, 2)], [Q(0), Q(0), Q(1)]],
                [Q(1, 6), Q(1, 3), Q(1, 3), Q(1, 6)],
            ),
            order=4,
        ),
    ]
    return {scheme.name: scheme for scheme in schemes}


PRESETS: dict[str, Scheme] = _build_presets()

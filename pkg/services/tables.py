"""Number and polynomial tables for the ``table`` command."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from models.polynomial import PolynomialExact
from models.report import TableRow
from services.catalog import ParamSpec, Params
from services.errors import UsageError
from services.exact_core import bell, stirling1_row, stirling2_row
from services.poly_families import (
    bernoulli_number,
    euler_number,
    euler_poly,
    exp_poly,
    geom_poly,
    poly_bernoulli_number,
)
from texts.cli import LOG_TABLE_BUILT, UNKNOWN_FAMILY_ERROR, UNKNOWN_PARAM_ERROR
from utils.format_output import format_scalar

logger = logging.getLogger(__name__)

Row = Sequence[object]


@dataclass(frozen=True)
class TableFamily:
    name: str
    row: Callable[[int, Params], Row]
    params: Tuple[ParamSpec, ...] = ()

    def parse(self, raw: Dict[str, str]) -> Params:
        known = {spec.name: spec for spec in self.params}
        for key in raw:
            if key not in known:
                raise UsageError(
                    UNKNOWN_PARAM_ERROR.format(key=key, name=self.name, available=", ".join(known) or "-")
                )
        return {
            spec.name: spec.convert(self.name, raw.get(spec.name, spec.default))
            for spec in self.params
        }


def _coefficients(poly: PolynomialExact, m: int) -> List[Fraction]:
    return [poly.coefficient(k) for k in range(m + 1)]


FAMILIES: Dict[str, TableFamily] = {
    family.name: family
    for family in (
        TableFamily("stirling2", lambda m, _: stirling2_row(m)),
        TableFamily("stirling1", lambda m, _: stirling1_row(m)),
        TableFamily("bell", lambda n, _: [bell(n)]),
        TableFamily("bernoulli", lambda m, _: [bernoulli_number(m)]),
        TableFamily(
            "poly-bernoulli",
            lambda n, v: [poly_bernoulli_number(v["q"], n)],
            (ParamSpec("q", "1", integer=True),),
        ),
        TableFamily("euler-numbers", lambda m, _: [euler_number(m)]),
        TableFamily("euler-poly", lambda m, _: _coefficients(euler_poly(m), m)),
        TableFamily("exp-poly", lambda m, _: _coefficients(exp_poly(m), m)),
        TableFamily("geom-poly", lambda m, _: _coefficients(geom_poly(m), m)),
    )
}


def get_family(name: str) -> TableFamily:
    try:
        return FAMILIES[name]
    except KeyError:
        raise UsageError(
            UNKNOWN_FAMILY_ERROR.format(name=name, available=", ".join(FAMILIES))
        ) from None


def build_table(
    name: str, max_index: int, raw: Dict[str, str], digits: int, as_float: bool = False
) -> List[TableRow]:
    """Rows 0..max_index of a family; polynomial families give coefficient rows."""
    family = get_family(name)
    values = family.parse(raw)
    rows = [
        TableRow(
            index=index,
            entries=[format_scalar(entry, digits, as_float=as_float) for entry in family.row(index, values)],
        )
        for index in range(max_index + 1)
    ]
    logger.info(LOG_TABLE_BUILT.format(family=name, rows=len(rows)))
    return rows


__all__ = ["FAMILIES", "TableFamily", "build_table", "get_family"]

"""Registry of evaluable functions: parameters, routes and independent references."""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import mpmath

from config.settings import settings
from models.report import CliConfig
from models.results import EvalResult
from services.asymptotics import TruncationPolicy
from services.errors import UsageError
from services.special_functions import (
    DigammaForm,
    arakawa_kaneko,
    arakawa_kaneko_asymptotic,
    digamma,
    digamma_asymptotic,
    eta,
    eta_asymptotic,
    hurwitz_zeta,
    hurwitz_zeta_asymptotic,
    lerch_asymptotic,
    lerch_phi,
    loggamma_asymptotic,
    polyexponential_asymptotic,
    polyexponential_direct,
)
from texts.cli import (
    BAD_PARAM_ERROR,
    BAD_VALUE_ERROR,
    MISSING_PARAM_ERROR,
    NO_COMPARISON_ERROR,
    NOT_INTEGER_ERROR,
    UNKNOWN_FUNCTION_ERROR,
    UNKNOWN_PARAM_ERROR,
    UNKNOWN_ROUTE_ERROR,
)
from utils.scalars import Scalar, add, as_scalar, is_integer, to_mpf

logger = logging.getLogger(__name__)

SERIES = "series"
ASYMPTOTIC = "asymptotic"
ROUTES = (SERIES, ASYMPTOTIC)

Params = Dict[str, object]
Route = Callable[[Params, CliConfig], EvalResult]


@dataclass(frozen=True)
class ParamSpec:
    name: str
    default: Optional[str] = None
    integer: bool = False
    choices: Optional[Tuple[str, ...]] = None

    def convert(self, function: str, raw: str) -> object:
        if self.choices is not None:
            if raw not in self.choices:
                raise UsageError(
                    UNKNOWN_PARAM_ERROR.format(
                        key=f"{self.name}={raw}", name=function, available=", ".join(self.choices)
                    )
                )
            return raw
        try:
            value = as_scalar(raw)
        except (ValueError, TypeError) as e:
            raise UsageError(BAD_VALUE_ERROR.format(key=self.name, value=raw)) from e
        if self.integer:
            if not is_integer(value):
                raise UsageError(NOT_INTEGER_ERROR.format(key=self.name, value=raw))
            return int(value)
        return value


@dataclass(frozen=True)
class FunctionEntry:
    """A function with its convergent and/or asymptotic route.

    ``oracle`` returns an independent mpmath value (or None when there is none
    for the given parameters). ``reference`` replaces the series route in
    comparisons for functions without one.
    """

    name: str
    params: Tuple[ParamSpec, ...]
    series: Optional[Route] = None
    asymptotic: Optional[Route] = None
    oracle: Optional[Callable[[Params], Optional[Scalar]]] = None
    reference: Optional[Callable[[Params], Tuple[str, Scalar]]] = None
    description: str = ""

    @property
    def routes(self) -> List[str]:
        return [route for route in ROUTES if self.route(route) is not None]

    @property
    def default_route(self) -> str:
        return SERIES if self.series is not None else ASYMPTOTIC

    def route(self, name: str) -> Optional[Route]:
        return self.series if name == SERIES else self.asymptotic if name == ASYMPTOTIC else None

    def parse(self, raw: Dict[str, str]) -> Params:
        """Convert raw key=value strings, filling defaults."""
        known = {spec.name: spec for spec in self.params}
        for key in raw:
            if key not in known:
                raise UsageError(
                    UNKNOWN_PARAM_ERROR.format(key=key, name=self.name, available=", ".join(known))
                )
        values: Params = {}
        for spec in self.params:
            text = raw.get(spec.name, spec.default)
            if text is None:
                raise UsageError(MISSING_PARAM_ERROR.format(key=spec.name, name=self.name))
            values[spec.name] = spec.convert(self.name, text)
        return values

    def evaluate(self, route: str, values: Params, config: CliConfig) -> EvalResult:
        runner = self.route(route)
        if runner is None:
            raise UsageError(UNKNOWN_ROUTE_ERROR.format(name=self.name, route=route))
        logger.debug(f"{self.name} via {route} with {values}")
        with mpmath.workdps(config.digits):
            return runner(values, config)

    def oracle_value(self, values: Params, config: CliConfig) -> Optional[Scalar]:
        if self.oracle is None:
            return None
        with mpmath.workdps(config.digits):
            return self.oracle(values)

    def reference_value(self, values: Params, config: CliConfig) -> Tuple[str, Scalar]:
        """Label and value of the non-series reference used by comparisons."""
        if self.reference is None:
            raise UsageError(NO_COMPARISON_ERROR.format(name=self.name))
        with mpmath.workdps(config.digits):
            return self.reference(values)


def parse_assignments(tokens: Sequence[str]) -> Dict[str, str]:
    """Split ``key=value`` tokens into a dict of strings."""
    raw: Dict[str, str] = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep or not key or not value:
            raise UsageError(BAD_PARAM_ERROR.format(token=token))
        raw[key.strip()] = value.strip()
    return raw


def policy_for(config: CliConfig) -> TruncationPolicy:
    return TruncationPolicy(tol=config.tol, max_terms=settings.asymptotic_max_terms)


def _series_kwargs(config: CliConfig) -> dict:
    return {"tol": config.tol, "max_terms": config.max_terms, "digits": config.digits}


def _mp(values: Params, *names: str) -> List[mpmath.mpf]:
    return [to_mpf(values[name]) for name in names]


# zeta: reports zeta(s+1, a)


def _zeta_oracle(v: Params) -> Scalar:
    s, a = _mp(v, "s", "a")
    return mpmath.zeta(s + 1, a)


# eta: reports eta(s, y+a)


def _eta_oracle(v: Params) -> Scalar:
    s, a, y = _mp(v, "s", "a", "y")
    return mpmath.lerchphi(-1, s, a + y)


# lerch: reports s*Phi(x,s+1,a) - log(x)*Phi(x,s,a)


def _lerch_oracle(v: Params) -> Scalar:
    x, s, a = _mp(v, "x", "s", "a")
    return s * mpmath.lerchphi(x, s + 1, a) - mpmath.log(x) * mpmath.lerchphi(x, s, a)


def _lerch_alt_oracle(v: Params) -> Scalar:
    x, s, a = _mp(v, "x", "s", "a")
    return mpmath.lerchphi(-x, s, a)


def _digamma_oracle(v: Params) -> Scalar:
    y, z = _mp(v, "y", "z")
    return mpmath.digamma(y + z)


def loggamma_reference(v: Params) -> Tuple[str, Scalar]:
    """log((y+z-1)!) for positive integer y+z, mpmath.loggamma otherwise."""
    argument = add(v["y"], v["z"])
    if is_integer(argument) and argument > 0:
        n = int(argument)
        return f"log({n - 1}!)", mpmath.log(mpmath.mpf(math.factorial(n - 1)))
    return "mpmath.loggamma", mpmath.loggamma(to_mpf(argument))


def _ak_oracle(v: Params) -> Optional[Scalar]:
    if v["r"] != 1:
        return None
    s, a = _mp(v, "s", "a")
    return s * mpmath.zeta(s + 1, a)


def _polyexp_oracle(v: Params) -> Scalar:
    s, x, lam = _mp(v, "s", "x", "lam")
    return mpmath.nsum(lambda n: x ** n / (mpmath.factorial(n) * (n + lam) ** s), [0, mpmath.inf])


FUNCTIONS: Dict[str, FunctionEntry] = {
    entry.name: entry
    for entry in (
        FunctionEntry(
            name="zeta",
            params=(ParamSpec("s"), ParamSpec("a", "1")),
            series=lambda v, c: hurwitz_zeta(v["s"], v["a"], **_series_kwargs(c)),
            asymptotic=lambda v, c: hurwitz_zeta_asymptotic(v["s"], v["a"], policy_for(c)),
            oracle=_zeta_oracle,
            description="zeta(s+1, a)",
        ),
        FunctionEntry(
            name="eta",
            params=(ParamSpec("s"), ParamSpec("a", "1"), ParamSpec("y", "0")),
            series=lambda v, c: eta(v["s"], add(v["a"], v["y"]), **_series_kwargs(c)),
            asymptotic=lambda v, c: eta_asymptotic(v["s"], v["a"], v["y"], policy_for(c)),
            oracle=_eta_oracle,
            description="eta(s, y+a)",
        ),
        FunctionEntry(
            name="lerch",
            params=(ParamSpec("x"), ParamSpec("s"), ParamSpec("a", "1")),
            series=lambda v, c: lerch_phi(v["x"], v["s"], v["a"], **_series_kwargs(c)).first,
            asymptotic=lambda v, c: lerch_asymptotic(v["x"], v["s"], v["a"], policy_for(c)),
            oracle=_lerch_oracle,
            description="s*Phi(x, s+1, a) - log(x)*Phi(x, s, a)",
        ),
        FunctionEntry(
            name="lerch-alt",
            params=(ParamSpec("x"), ParamSpec("s"), ParamSpec("a", "1")),
            series=lambda v, c: lerch_phi(v["x"], v["s"], v["a"], **_series_kwargs(c)).second,
            oracle=_lerch_alt_oracle,
            description="Phi(-x, s, a)",
        ),
        FunctionEntry(
            name="digamma",
            params=(
                ParamSpec("z"),
                ParamSpec("y", "0"),
                ParamSpec("form", DigammaForm.DIRECT.value, choices=tuple(f.value for f in DigammaForm)),
            ),
            series=lambda v, c: digamma(
                add(v["y"], v["z"]), form=DigammaForm(v["form"]), **_series_kwargs(c)
            ),
            asymptotic=lambda v, c: digamma_asymptotic(v["y"], v["z"], policy_for(c)),
            oracle=_digamma_oracle,
            description="psi(y+z)",
        ),
        FunctionEntry(
            name="loggamma",
            params=(ParamSpec("z"), ParamSpec("y", "0")),
            asymptotic=lambda v, c: loggamma_asymptotic(v["y"], v["z"], policy_for(c)),
            oracle=lambda v: loggamma_reference(v)[1],
            reference=loggamma_reference,
            description="log Gamma(y+z)",
        ),
        FunctionEntry(
            name="arakawa-kaneko",
            params=(ParamSpec("r", "1", integer=True), ParamSpec("s"), ParamSpec("a", "1")),
            series=lambda v, c: arakawa_kaneko(v["r"], v["s"], v["a"], **_series_kwargs(c)),
            asymptotic=lambda v, c: arakawa_kaneko_asymptotic(v["r"], v["s"], v["a"], policy_for(c)),
            oracle=_ak_oracle,
            description="zeta_r(s, a)",
        ),
        FunctionEntry(
            name="polyexp",
            params=(ParamSpec("s"), ParamSpec("x"), ParamSpec("lam")),
            series=lambda v, c: polyexponential_direct(
                v["s"], v["x"], v["lam"], tol=c.tol, max_terms=c.max_terms
            ),
            asymptotic=lambda v, c: polyexponential_asymptotic(v["s"], v["x"], v["lam"], policy_for(c)),
            oracle=_polyexp_oracle,
            description="e_s(x, lam)",
        ),
    )
}


def get_function(name: str) -> FunctionEntry:
    try:
        return FUNCTIONS[name]
    except KeyError:
        raise UsageError(
            UNKNOWN_FUNCTION_ERROR.format(name=name, available=", ".join(FUNCTIONS))
        ) from None


__all__ = [
    "ASYMPTOTIC",
    "FUNCTIONS",
    "FunctionEntry",
    "ParamSpec",
    "SERIES",
    "get_function",
    "loggamma_reference",
    "parse_assignments",
    "policy_for",
]

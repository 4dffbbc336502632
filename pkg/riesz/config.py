from __future__ import annotations

from typing import Dict, List, Mapping, Optional, Tuple, Union

from riesz.errors import ConfigError, DomainError
from riesz.harness import SweepConfig
from riesz.kernel import KernelForm
from riesz.quadrature import QuadratureSpec
from riesz.special import ProblemParams


RawValue = Union[str, List[str]]

KEYS = (
    "d",
    "alpha",
    "p-grid",
    "rs-grid",
    "alpha-grid",
    "radii",
    "dims",
    "rel-tol",
    "format",
    "out",
    "free-const",
    "profile",
    "beta",
    "q",
    "form",
    "grid-size",
    "seed",
)
REPEATABLE = ("free-const", "profile")


def read_config_file(path: str) -> Dict[str, RawValue]:
    """Parse `key = value` lines; `#` starts a comment."""
    values: Dict[str, RawValue] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or not key:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            if key not in KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            if key in REPEATABLE:
                listed = values.setdefault(key, [])
                assert isinstance(listed, list)
                listed.append(value)
            else:
                values[key] = value
    return values


def merge(
    file_values: Mapping[str, RawValue], flag_values: Mapping[str, Optional[RawValue]]
) -> Dict[str, RawValue]:
    """Flags that were given override the file."""
    merged = dict(file_values)
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    return merged


def _number(key: str, text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{key}: {text!r} is not a number") from None


def _integer(key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{key}: {text!r} is not an integer") from None


def parse_grid(key: str, text: Optional[str]) -> Optional[Tuple[float, ...]]:
    """A comma list of reals; `auto` (or nothing) means generate it."""
    if text is None or text.strip() == "auto":
        return None
    return tuple(_number(key, item) for item in text.split(",") if item.strip())


def parse_pairs(text: Optional[str]) -> Optional[Tuple[Tuple[float, float], ...]]:
    """Pairs written `r:s`, separated by commas."""
    if text is None or text.strip() == "auto":
        return None
    pairs = []
    for item in text.split(","):
        if not item.strip():
            continue
        r, sep, s = item.partition(":")
        if not sep:
            raise ConfigError(f"rs-grid: {item!r} is not r:s")
        pairs.append((_number("rs-grid", r), _number("rs-grid", s)))
    return tuple(pairs)


def parse_free_constant(text: str) -> Tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep:
        raise ConfigError(f"free-const: {text!r} is not name=value")
    return name.strip(), _number(name.strip(), value)


def _single(values: Mapping[str, RawValue], key: str) -> Optional[str]:
    value = values.get(key)
    if isinstance(value, list):
        raise ConfigError(f"{key} given more than once")
    return value


def _many(values: Mapping[str, RawValue], key: str) -> List[str]:
    value = values.get(key, [])
    return [value] if isinstance(value, str) else list(value)


def build_config(values: Mapping[str, RawValue]) -> SweepConfig:
    d, alpha = _single(values, "d"), _single(values, "alpha")
    if d is None or alpha is None:
        raise ConfigError("both d and alpha are required")
    try:
        params = ProblemParams(_integer("d", d), _number("alpha", alpha))
    except DomainError as e:
        raise ConfigError(str(e)) from e

    extra: Dict[str, object] = {}
    radii = parse_grid("radii", _single(values, "radii"))
    if radii is not None:
        extra["radii"] = radii
    dims = _single(values, "dims")
    if dims is not None:
        extra["dims"] = tuple(_integer("dims", x) for x in dims.split(","))
    rel_tol = _single(values, "rel-tol")
    if rel_tol is not None:
        try:
            extra["quad"] = QuadratureSpec(rel_tol=_number("rel-tol", rel_tol))
        except DomainError as e:
            raise ConfigError(str(e)) from e
    for key, name, convert in (
        ("beta", "beta", _number),
        ("grid-size", "grid_size", _integer),
        ("seed", "seed", _integer),
    ):
        text = _single(values, key)
        if text is not None:
            extra[name] = convert(key, text)
    form = _single(values, "form")
    if form is not None:
        try:
            extra["form"] = KernelForm(form)
        except ValueError:
            raise ConfigError(f"unknown kernel form {form!r}") from None

    return SweepConfig(
        params=params,
        p_grid=parse_grid("p-grid", _single(values, "p-grid")),
        rs_grid=parse_pairs(_single(values, "rs-grid")),
        alpha_grid=parse_grid("alpha-grid", _single(values, "alpha-grid")),
        profiles=tuple(_many(values, "profile")),
        output_path=_single(values, "out"),
        fmt=_single(values, "format") or "json",
        free_constants=tuple(
            parse_free_constant(t) for t in _many(values, "free-const")
        ),
        q_label=_single(values, "q") or "one",
        **extra,  # type: ignore[arg-type]
    )

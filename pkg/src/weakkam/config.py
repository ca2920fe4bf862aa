"""Analysis configuration: strict JSON schema, version 1.

Every rational is an integer or a ``"p/q"`` string.  Unknown keys are errors,
reported with the path of the offending entry.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from ._numeric import Number, parse_number
from .errors import ConfigError
from .potential import CountableModel, HoelderModel, Potential, TailBound
from .shift import DEFAULT_K0_CAP, MarkovGraph

TOP_KEYS = {
    "schema", "name", "mode", "graph", "potential", "F", "k0_cap", "i_max", "tail",
    "declared", "hoelder", "plateau_window", "eta", "horizon", "I_hat",
}

DEFAULT_WINDOW = 3
DEFAULT_HORIZON = 12
DEFAULT_ETA = "1/2"


@dataclass(frozen=True)
class AnalysisConfig:
    name: str
    exact: bool
    model: CountableModel
    F: tuple[int, ...] | None
    k0_cap: int
    window: int
    eta: Number
    horizon: int
    I_hat: int | None
    raw: dict

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "float"

    @property
    def config_hash(self) -> str:
        return hashlib.sha256(canonical_json(self.raw).encode()).hexdigest()


def canonical_json(obj: Any, indent: int | None = None) -> str:
    if indent is None:
        return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return json.dumps(obj, sort_keys=True, indent=indent, ensure_ascii=True) + "\n"


def _keys(obj: Any, allowed: set[str], where: str, required: set[str] = frozenset()) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object")
    extra = sorted(set(obj) - allowed)
    if extra:
        raise ConfigError(f"{where}: unknown key {extra[0]!r}")
    missing = sorted(required - set(obj))
    if missing:
        raise ConfigError(f"{where}: missing key {missing[0]!r}")
    return obj


def _int(value: Any, where: str, lo: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}: expected an integer")
    if lo is not None and value < lo:
        raise ConfigError(f"{where}: must be at least {lo}")
    return value


def _num(value: Any, where: str, exact: bool) -> Number:
    try:
        return parse_number(value, exact)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _graph(obj: Any) -> MarkovGraph:
    obj = _keys(obj, {"symbols", "transitions"}, "graph", {"symbols", "transitions"})
    symbols = obj["symbols"]
    if isinstance(symbols, int) and not isinstance(symbols, bool):
        symbols = list(range(_int(symbols, "graph.symbols", 1)))
    elif isinstance(symbols, list):
        symbols = [_int(s, f"graph.symbols[{i}]", 0) for i, s in enumerate(symbols)]
    else:
        raise ConfigError("graph.symbols: expected a count or a list of symbols")
    trans = obj["transitions"]
    try:
        if trans == "full":
            return MarkovGraph.full(symbols)
        if isinstance(trans, list) and all(isinstance(r, str) for r in trans):
            return MarkovGraph.from_rows(symbols, trans)
        if isinstance(trans, list):
            edges = []
            for i, e in enumerate(trans):
                if not (isinstance(e, list) and len(e) == 2):
                    raise ConfigError(f"graph.transitions[{i}]: expected a pair [i, j]")
                edges.append((_int(e[0], f"graph.transitions[{i}][0]", 0),
                              _int(e[1], f"graph.transitions[{i}][1]", 0)))
            return MarkovGraph(tuple(symbols), frozenset(edges))
    except ValueError as exc:
        raise ConfigError(f"graph.transitions: {exc}") from None
    raise ConfigError("graph.transitions: expected \"full\", row strings, or an edge list")


def _potential(obj: Any, exact: bool) -> Potential:
    obj = _keys(obj, {"range", "table"}, "potential", {"range", "table"})
    m = _int(obj["range"], "potential.range", 1)
    table = obj["table"]
    if not isinstance(table, list):
        raise ConfigError("potential.table: expected a list")
    weights = {}
    for i, row in enumerate(table):
        where = f"potential.table[{i}]"
        row = _keys(row, {"word", "value"}, where, {"word", "value"})
        if not isinstance(row["word"], list):
            raise ConfigError(f"{where}.word: expected a list of symbols")
        word = tuple(_int(s, f"{where}.word[{k}]", 0) for k, s in enumerate(row["word"]))
        if len(word) != m:
            raise ConfigError(f"{where}.word: length {len(word)}, expected {m}")
        if word in weights:
            raise ConfigError(f"{where}.word: duplicate word {list(word)}")
        weights[word] = _num(row["value"], f"{where}.value", exact)
    return Potential(m, weights)


def _tail(obj: Any, exact: bool) -> TailBound:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ConfigError("tail: expected an object with a 'type'")
    if obj["type"] == "affine":
        obj = _keys(obj, {"type", "slope", "offset"}, "tail", {"slope", "offset"})
        return TailBound.affine(_num(obj["slope"], "tail.slope", exact), _num(obj["offset"], "tail.offset", exact))
    if obj["type"] == "table":
        obj = _keys(obj, {"type", "entries", "slope"}, "tail", {"entries", "slope"})
        entries = {}
        if not isinstance(obj["entries"], list) or not obj["entries"]:
            raise ConfigError("tail.entries: expected a nonempty list of [symbol, value] pairs")
        for i, pair in enumerate(obj["entries"]):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ConfigError(f"tail.entries[{i}]: expected [symbol, value]")
            entries[_int(pair[0], f"tail.entries[{i}][0]", 0)] = _num(pair[1], f"tail.entries[{i}][1]", exact)
        try:
            return TailBound(slope=_num(obj["slope"], "tail.slope", exact), entries=entries)
        except ValueError as exc:
            raise ConfigError(f"tail.entries: {exc}") from None
    raise ConfigError(f"tail.type: unknown tail type {obj['type']!r}")


def parse_config(raw: Any, overrides: dict | None = None) -> AnalysisConfig:
    """Validate a decoded JSON config; ``overrides`` replace top-level keys first."""
    raw = _keys(raw, TOP_KEYS, "config", {"schema", "graph", "potential"})
    raw = dict(raw)
    for k, v in (overrides or {}).items():
        if v is not None:
            raw[k] = v
    if raw["schema"] != 1:
        raise ConfigError(f"schema: unsupported version {raw['schema']!r}")
    mode = raw.get("mode", "exact")
    if mode not in ("exact", "float"):
        raise ConfigError("mode: expected 'exact' or 'float'")
    exact = mode == "exact"
    graph = _graph(raw["graph"])
    potential = _potential(raw["potential"], exact)
    i_max = _int(raw.get("i_max", max(graph.vertices)), "i_max", 0)

    tail = _tail(raw["tail"], exact) if "tail" in raw else None
    declared = _keys(raw.get("declared", {}), {"sup_A", "var_total", "inf_A_on_F"}, "declared")
    dec = {k: _num(v, f"declared.{k}", exact) for k, v in declared.items()}
    hoelder = None
    if "hoelder" in raw:
        h = _keys(raw["hoelder"], {"H", "lambda"}, "hoelder", {"H", "lambda"})
        try:
            hoelder = HoelderModel(_num(h["H"], "hoelder.H", exact), _num(h["lambda"], "hoelder.lambda", exact))
        except ValueError as exc:
            raise ConfigError(f"hoelder: {exc}") from None

    F = None
    if "F" in raw:
        if not isinstance(raw["F"], list) or not raw["F"]:
            raise ConfigError("F: expected a nonempty list of symbols")
        F = tuple(sorted({_int(s, f"F[{i}]", 0) for i, s in enumerate(raw["F"])}))

    eta = _num(raw.get("eta", DEFAULT_ETA), "eta", exact)
    if eta <= 0:
        raise ConfigError("eta: must be positive")
    I_hat = raw.get("I_hat")
    if I_hat is not None:
        I_hat = _int(I_hat, "I_hat", 0)
    name = raw.get("name", "")
    if not isinstance(name, str):
        raise ConfigError("name: expected a string")

    model = CountableModel(
        graph=graph,
        potential=potential,
        i_max=i_max,
        tail=tail,
        sup_A=dec.get("sup_A"),
        var_total=dec.get("var_total"),
        inf_A_on_F=dec.get("inf_A_on_F"),
        hoelder=hoelder,
    )
    return AnalysisConfig(
        name=name,
        exact=exact,
        model=model,
        F=F,
        k0_cap=_int(raw.get("k0_cap", DEFAULT_K0_CAP), "k0_cap", 0),
        window=_int(raw.get("plateau_window", DEFAULT_WINDOW), "plateau_window", 0),
        eta=eta,
        horizon=_int(raw.get("horizon", DEFAULT_HORIZON), "horizon", 1),
        I_hat=I_hat,
        raw=raw,
    )


def load_config(path: str | Path, overrides: dict | None = None) -> AnalysisConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_config(raw, overrides)

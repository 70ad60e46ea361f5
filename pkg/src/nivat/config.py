"""Line-oriented configuration files describing sources.

Grammar (see ``docs/config_format.md`` for examples)::

    file     := (blank | comment | header | pair)*
    comment  := '#' ...
    header   := '[sequence NAME]' | '[source NAME]' | '[decomposition]' | '[annihilator]'
    pair     := KEY '=' VALUE

Vectors are written ``(x,y)``. The main source is the one named ``main``, or
the only source in the file.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .annihilator import Ring, format_poly, parse_poly
from .configuration import ConfigurationSource, DoublyPeriodic, Layer, Sum
from .decomposition import Decomposition
from .errors import ConfigError
from .sequences import EventuallyPeriodic, PeriodicWord, Substitution, format_word, parse_word

NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_HEADER = re.compile(rf"^\[\s*(sequence|source)\s+({NAME})\s*\]$|^\[\s*(decomposition|annihilator)\s*\]$")
_VEC = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")
_TERM = re.compile(rf"\s*([+-]?)\s*(?:(\d+)\s*\*\s*)?({NAME})\s*")
_COMPONENT = re.compile(rf"^\s*(?:(-?\d+)\s*\*\s*)?({NAME})\s*(\(\s*-?\d+\s*,\s*-?\d+\s*\))\s*$")

SEQUENCE_KEYS = {
    "periodic": {"kind", "word"},
    "substitution": {"kind", "rules", "seed", "left"},
    "eventually_periodic": {"kind", "prefix", "period"},
}
SOURCE_KEYS = {
    "doubly_periodic": {"kind", "h1", "h2", "table", "offset"},
    "constant": {"kind", "value"},
    "layer": {"kind", "h", "sequence", "offset"},
    "sum": {"kind", "terms", "periods"},
}


def parse_vec(text: str):
    m = _VEC.fullmatch(text.strip())
    if not m:
        raise ValueError(f"expected a vector (x,y), got {text.strip()!r}")
    return int(m.group(1)), int(m.group(2))


def parse_vec_list(text: str) -> list:
    text = text.strip()
    vecs = [(int(a), int(b)) for a, b in _VEC.findall(text)]
    if _VEC.sub("", text).replace(",", "").replace(";", "").strip():
        raise ValueError(f"expected a list of vectors (x,y), got {text!r}")
    return vecs


def fmt_vec(v) -> str:
    return f"({v[0]},{v[1]})"


def parse_rules(text: str) -> dict:
    rules = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if "->" not in part:
            raise ValueError(f"rule {part!r} lacks '->'")
        a, w = part.split("->", 1)
        rules[int(a.strip())] = parse_word(w)
    if not rules:
        raise ValueError("no substitution rules")
    return rules


def fmt_rules(rules: dict) -> str:
    return "; ".join(f"{a} -> {format_word(w)}" for a, w in sorted(rules.items()))


def parse_table(text: str) -> list:
    rows = [r.split() for r in text.split(";")]
    if any(not r for r in rows):
        raise ValueError("empty table row")
    return [[int(a) for a in r] for r in rows]


def fmt_table(table) -> str:
    return "; ".join(" ".join(str(a) for a in row) for row in table)


def parse_terms(text: str) -> list:
    s = text.strip()
    pos, out = 0, []
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (out and not m.group(1)):
            raise ValueError(f"cannot parse sum terms at {s[pos:]!r}")
        c = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        out.append((c, m.group(3)))
        pos = m.end()
    if not out:
        raise ValueError("empty sum")
    return out


def fmt_terms(terms) -> str:
    parts = []
    for i, (c, name) in enumerate(terms):
        body = f"{abs(c)}*{name}"
        if i == 0:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "1"):
        return True
    if t in ("false", "no", "0"):
        return False
    raise ValueError(f"expected true or false, got {text.strip()!r}")


@dataclass
class Section:
    kind: str  # sequence, source, decomposition, annihilator
    name: str | None
    line: int
    fields: dict = field(default_factory=dict)  # key -> (value, line, col)
    components: list = field(default_factory=list)  # decomposition only


@dataclass
class ConfigSpec:
    sequences: dict = field(default_factory=dict)  # name -> (kind, params)
    sources: dict = field(default_factory=dict)  # name -> (kind, params)
    decomposition: tuple | None = None  # ([(coef, name, h)], claimed_minimal)
    annihilator: tuple | None = None  # (poly, ring)
    _built: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def main_name(self) -> str:
        if "main" in self.sources:
            return "main"
        if len(self.sources) == 1:
            return next(iter(self.sources))
        raise ConfigError("no source named 'main' and more than one source defined")

    def main(self) -> ConfigurationSource:
        return self.source(self.main_name)

    def sequence(self, name: str):
        kind, p = self.sequences[name]
        if kind == "periodic":
            return PeriodicWord(p["word"])
        if kind == "eventually_periodic":
            return EventuallyPeriodic(p["prefix"], p["period"])
        return Substitution(p["rules"], p["seed"], p.get("left"))

    def source(self, name: str, _stack=()) -> ConfigurationSource:
        if name in self._built:
            return self._built[name]
        if name not in self.sources:
            raise ConfigError(f"unknown source {name!r}")
        if name in _stack:
            raise ConfigError(f"source {name!r} refers to itself")
        kind, p = self.sources[name]
        if kind == "doubly_periodic":
            src = DoublyPeriodic(p["h1"], p["h2"], p["table"], p.get("offset", (0, 0)))
        elif kind == "constant":
            src = DoublyPeriodic((1, 0), (0, 1), [[p["value"]]])
        elif kind == "layer":
            if p["sequence"] not in self.sequences:
                raise ConfigError(f"unknown sequence {p['sequence']!r}")
            src = Layer(p["h"], self.sequence(p["sequence"]), p.get("offset", 0))
        else:
            terms = [(c, self.source(n, _stack + (name,))) for c, n in p["terms"]]
            src = Sum(terms, p.get("periods", ()))
        self._built[name] = src
        return src

    def build_decomposition(self) -> Decomposition | None:
        if self.decomposition is None:
            return None
        comps, minimal = self.decomposition
        out = []
        for c, name, h in comps:
            src = self.source(name)
            out.append((src if c == 1 else Sum([(c, src)]), h))
        return Decomposition(out, minimal)


def _require(sec: Section, key: str):
    if key not in sec.fields:
        raise ConfigError(f"section [{sec.kind} {sec.name}] needs '{key}'", sec.line)
    return sec.fields[key]


def _convert(sec: Section, key: str, fn, default=None, required=True):
    if key not in sec.fields and not required:
        return default
    value, line, col = _require(sec, key)
    try:
        return fn(value)
    except (ValueError, KeyError) as exc:
        raise ConfigError(str(exc), line, col) from None


def _check_keys(sec: Section, allowed: set):
    for key, (_, line, col) in sec.fields.items():
        if key not in allowed:
            raise ConfigError(f"unknown key {key!r} in [{sec.kind}]", line, col)


def _split(text: str) -> list[Section]:
    sections: list[Section] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col0 = len(line) - len(line.lstrip()) + 1
        if stripped.startswith("["):
            m = _HEADER.match(stripped)
            if not m:
                raise ConfigError(f"bad section header {stripped!r}", lineno, col0)
            if m.group(1):
                sections.append(Section(m.group(1), m.group(2), lineno))
            else:
                sections.append(Section(m.group(3), None, lineno))
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", lineno, col0)
        if not sections:
            raise ConfigError("key outside of a section", lineno, col0)
        key, value = line.split("=", 1)
        key = key.strip()
        vcol = len(line) - len(value) + (len(value) - len(value.lstrip())) + 1
        sec = sections[-1]
        if sec.kind == "decomposition" and key == "component":
            sec.components.append((value.strip(), lineno, vcol))
            continue
        if key in sec.fields:
            raise ConfigError(f"duplicate key {key!r}", lineno, col0)
        sec.fields[key] = (value.strip(), lineno, vcol)
    return sections


def parse_config(text: str) -> ConfigSpec:
    spec = ConfigSpec()
    for sec in _split(text):
        if sec.kind == "sequence":
            if sec.name in spec.sequences:
                raise ConfigError(f"duplicate sequence {sec.name!r}", sec.line)
            kind = _convert(sec, "kind", str.strip)
            if kind not in SEQUENCE_KEYS:
                _, line, col = sec.fields["kind"]
                raise ConfigError(f"unknown sequence kind {kind!r}", line, col)
            _check_keys(sec, SEQUENCE_KEYS[kind])
            if kind == "periodic":
                p = {"word": _convert(sec, "word", parse_word)}
            elif kind == "eventually_periodic":
                p = {"prefix": _convert(sec, "prefix", parse_word),
                     "period": _convert(sec, "period", parse_word)}
            else:
                p = {"rules": _convert(sec, "rules", parse_rules),
                     "seed": _convert(sec, "seed", int)}
                left = _convert(sec, "left", int, required=False)
                if left is not None:
                    p["left"] = left
                try:
                    Substitution(p["rules"], p["seed"], p.get("left"))
                except ValueError as exc:
                    raise ConfigError(str(exc), sec.line) from None
            spec.sequences[sec.name] = (kind, p)
        elif sec.kind == "source":
            if sec.name in spec.sources:
                raise ConfigError(f"duplicate source {sec.name!r}", sec.line)
            kind = _convert(sec, "kind", str.strip)
            if kind not in SOURCE_KEYS:
                _, line, col = sec.fields["kind"]
                raise ConfigError(f"unknown source kind {kind!r}", line, col)
            _check_keys(sec, SOURCE_KEYS[kind])
            if kind == "doubly_periodic":
                p = {"h1": _convert(sec, "h1", parse_vec), "h2": _convert(sec, "h2", parse_vec),
                     "table": _convert(sec, "table", parse_table)}
                off = _convert(sec, "offset", parse_vec, required=False)
                if off is not None:
                    p["offset"] = off
                try:
                    DoublyPeriodic(p["h1"], p["h2"], p["table"])
                except ValueError as exc:
                    raise ConfigError(str(exc), sec.line) from None
            elif kind == "constant":
                p = {"value": _convert(sec, "value", int)}
            elif kind == "layer":
                p = {"h": _convert(sec, "h", parse_vec), "sequence": _convert(sec, "sequence", str.strip)}
                off = _convert(sec, "offset", int, required=False)
                if off is not None:
                    p["offset"] = off
            else:
                p = {"terms": _convert(sec, "terms", parse_terms)}
                per = _convert(sec, "periods", parse_vec_list, required=False)
                if per:
                    p["periods"] = per
            spec.sources[sec.name] = (kind, p)
        elif sec.kind == "decomposition":
            if spec.decomposition is not None:
                raise ConfigError("duplicate [decomposition] section", sec.line)
            _check_keys(sec, {"claimed_minimal"})
            comps = []
            for value, line, col in sec.components:
                m = _COMPONENT.match(value)
                if not m:
                    raise ConfigError(f"bad component {value!r}; expected [c*]name (x,y)", line, col)
                comps.append((int(m.group(1) or 1), m.group(2), parse_vec(m.group(3))))
            if not comps:
                raise ConfigError("decomposition has no components", sec.line)
            minimal = _convert(sec, "claimed_minimal", parse_bool, default=False, required=False)
            spec.decomposition = (comps, minimal)
        else:
            if spec.annihilator is not None:
                raise ConfigError("duplicate [annihilator] section", sec.line)
            _check_keys(sec, {"poly", "ring"})
            ring = _convert(sec, "ring", _parse_ring, default=Ring(), required=False)
            poly = _convert(sec, "poly", lambda t: parse_poly(t, ring))
            spec.annihilator = (poly, ring)
    if not spec.sources:
        raise ConfigError("no [source] section")
    for name, (kind, p) in spec.sources.items():
        if kind == "layer" and p["sequence"] not in spec.sequences:
            raise ConfigError(f"source {name!r}: unknown sequence {p['sequence']!r}")
        if kind == "sum":
            for _, ref in p["terms"]:
                if ref not in spec.sources:
                    raise ConfigError(f"source {name!r}: unknown source {ref!r}")
    if spec.decomposition:
        for _, ref, _ in spec.decomposition[0]:
            if ref not in spec.sources:
                raise ConfigError(f"decomposition: unknown source {ref!r}")
    spec.main_name  # raises when ambiguous
    return spec


def _parse_ring(text: str) -> Ring:
    t = text.strip()
    if t == "Z":
        return Ring()
    m = re.fullmatch(r"F_?(\d+)", t)
    if not m:
        raise ValueError(f"ring must be Z or F_p, got {t!r}")
    return Ring(int(m.group(1)))


def load_config(path) -> ConfigSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def format_config(spec: ConfigSpec) -> str:
    """Canonical text; ``parse_config(format_config(s))`` equals ``s``."""
    out = []
    for name, (kind, p) in spec.sequences.items():
        out.append(f"[sequence {name}]")
        out.append(f"kind = {kind}")
        if kind == "periodic":
            out.append(f"word = {format_word(p['word'])}")
        elif kind == "eventually_periodic":
            out.append(f"prefix = {format_word(p['prefix'])}")
            out.append(f"period = {format_word(p['period'])}")
        else:
            out.append(f"rules = {fmt_rules(p['rules'])}")
            out.append(f"seed = {p['seed']}")
            if "left" in p:
                out.append(f"left = {p['left']}")
        out.append("")
    for name, (kind, p) in spec.sources.items():
        out.append(f"[source {name}]")
        out.append(f"kind = {kind}")
        if kind == "doubly_periodic":
            out.append(f"h1 = {fmt_vec(p['h1'])}")
            out.append(f"h2 = {fmt_vec(p['h2'])}")
            out.append(f"table = {fmt_table(p['table'])}")
            if "offset" in p:
                out.append(f"offset = {fmt_vec(p['offset'])}")
        elif kind == "constant":
            out.append(f"value = {p['value']}")
        elif kind == "layer":
            out.append(f"h = {fmt_vec(p['h'])}")
            out.append(f"sequence = {p['sequence']}")
            if "offset" in p:
                out.append(f"offset = {p['offset']}")
        else:
            out.append(f"terms = {fmt_terms(p['terms'])}")
            if p.get("periods"):
                out.append("periods = " + " ".join(fmt_vec(v) for v in p["periods"]))
        out.append("")
    if spec.decomposition is not None:
        comps, minimal = spec.decomposition
        out.append("[decomposition]")
        for c, name, h in comps:
            out.append(f"component = {c}*{name} {fmt_vec(h)}")
        out.append(f"claimed_minimal = {'true' if minimal else 'false'}")
        out.append("")
    if spec.annihilator is not None:
        poly, ring = spec.annihilator
        out.append("[annihilator]")
        out.append(f"poly = {format_poly(poly)}")
        out.append(f"ring = {'Z' if ring.p is None else f'F_{ring.p}'}")
        out.append("")
    return "\n".join(out)

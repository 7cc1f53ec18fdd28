r"""CPLEX LP text rendering of :mod:`chimera_qubo.formulations` models.

The emitted subset::

    \Problem name: qubo-milp-full
    \Formulation: milp
    \Objective offset: 1
    Minimize
     obj: - 2 x0 - 2 x1 + 4 z_0_1
    Subject To
     ub_0_1_a: z_0_1 - x0 <= 0
     ...
    Bounds
     0 <= z_0_1 <= 1
    Binaries
     x0 x1
    End

* Every term carries an explicit integer coefficient.
* Quadratic objective terms go in one ``[ ... ] / 2`` group with doubled
  coefficients, ``x0 * x1`` for products and ``x0 ^2`` for squares.
* The LP dialect has no objective constant, so the offset travels in the
  ``\Objective offset:`` comment.  An MIQP diagonal shift is listed on
  ``\Diagonal shift:`` comment lines as ``var value`` pairs.
* Long expressions wrap onto continuation lines indented by three spaces.

:func:`parse_lp` reads exactly this subset back.
"""

from __future__ import annotations

import re

from .errors import DuplicateBoundError, LpParseError, MalformedSectionError, UnknownVariableError
from .formulations import Constraint, MilpModel, MiqpModel

_TERMS_PER_LINE = 8
_NAMES_PER_LINE = 10


def _fmt_terms(terms, first=True) -> list:
    """Render ``(coef, text)`` pairs as signed tokens."""
    parts = []
    for coef, text in terms:
        if first:
            parts.append(f"- {-coef} {text}" if coef < 0 else f"{coef} {text}")
            first = False
        else:
            parts.append(f"- {-coef} {text}" if coef < 0 else f"+ {coef} {text}")
    return parts


def _wrap(head: str, parts: list, per_line: int = _TERMS_PER_LINE) -> list:
    if not parts:
        return [head]
    lines = []
    for i in range(0, len(parts), per_line):
        chunk = " ".join(parts[i:i + per_line])
        lines.append(f"{head} {chunk}" if i == 0 else f"   {chunk}")
    return lines


def emit_lp(model) -> str:
    """Deterministic LP text for a :class:`MilpModel` or :class:`MiqpModel`."""
    kind = "miqp" if isinstance(model, MiqpModel) else "milp"
    lines = [f"\\Problem name: {model.name}", f"\\Formulation: {kind}",
             f"\\Objective offset: {model.offset}"]
    if kind == "miqp":
        pairs = [f"{name} {d}" for name, d in ((f"x{v}", d) for v, d in model.shift)]
        for i in range(0, len(pairs), _NAMES_PER_LINE):
            lines.append("\\Diagonal shift: " + " ".join(pairs[i:i + _NAMES_PER_LINE]))
        lines.append("Minimize")
        parts = _fmt_terms([(c, v) for v, c in model.linear])
        if model.quadratic:
            quad = _fmt_terms(
                [(2 * c, f"{a} ^2" if a == b else f"{a} * {b}") for a, b, c in model.quadratic])
            parts = parts + [("+ [ " if parts else "[ ") + quad[0]] + quad[1:]
            parts[-1] += " ] / 2"
        lines.extend(_wrap(" obj:", parts))
        lines.append("Subject To")
        lines.append("Bounds")
    else:
        lines.append("Minimize")
        lines.extend(_wrap(" obj:", _fmt_terms([(c, v) for v, c in model.objective])))
        lines.append("Subject To")
        for con in model.constraints:
            body = _fmt_terms([(c, v) for v, c in con.terms])
            body[-1] += f" {con.sense} {con.rhs}"
            lines.extend(_wrap(f" {con.name}:", body))
        lines.append("Bounds")
        for var, lo, hi in model.bounds:
            if lo is None and hi is None:
                lines.append(f" {var} free")
            else:
                lo_s = "-inf" if lo is None else str(lo)
                hi_s = "+inf" if hi is None else str(hi)
                lines.append(f" {lo_s} <= {var} <= {hi_s}")
    lines.append("Binaries")
    for i in range(0, len(model.binaries), _NAMES_PER_LINE):
        lines.append(" " + " ".join(model.binaries[i:i + _NAMES_PER_LINE]))
    lines.append("End")
    return "\n".join(lines) + "\n"


# -- parsing -----------------------------------------------------------------

_SECTIONS = {
    "minimize": "objective", "minimise": "objective", "minimum": "objective", "min": "objective",
    "subject to": "constraints", "such that": "constraints", "st": "constraints",
    "s.t.": "constraints", "bounds": "bounds", "bound": "bounds",
    "binaries": "binaries", "binary": "binaries", "bin": "binaries", "end": "end",
}
_ORDER = ["objective", "constraints", "bounds", "binaries", "end"]
_TOKEN = re.compile(r"\s*(<=|>=|=<|=>|[-+*^\[\]/:=<>]|\d+(?:\.\d*)?|[A-Za-z_][\w.]*)")
_NAME = re.compile(r"[A-Za-z_][\w.]*\Z")


def _tokenize(text: str, line: int) -> list:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise LpParseError(f"unexpected character {text[pos:].strip()[:1]!r}", line)
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def _int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise LpParseError(f"expected an integer, got {tok!r}", line) from None


class _Reader:
    def __init__(self, tokens, line):
        self.toks = tokens
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise LpParseError(f"expected {expected or 'a token'}, got {tok!r}", self.line)
        self.i += 1
        return tok

    def signed_coef(self, first):
        sign = 1
        tok = self.peek()
        if tok in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        elif not first:
            raise LpParseError(f"expected '+' or '-', got {tok!r}", self.line)
        tok = self.peek()
        if tok is not None and tok[0].isdigit():
            return sign * _int(self.take(), self.line)
        return sign

    def name(self):
        tok = self.take()
        if not _NAME.match(tok):
            raise LpParseError(f"expected a variable name, got {tok!r}", self.line)
        return tok

    def linear(self, stop):
        """Parse terms until a token in ``stop`` (or the end)."""
        terms = []
        while self.peek() is not None and self.peek() not in stop:
            if self.peek() in ("+", "-") and self.i + 1 < len(self.toks) and self.toks[self.i + 1] == "[":
                break
            coef = self.signed_coef(first=not terms)
            terms.append((self.name(), coef))
        return terms


def _parse_objective(text, line):
    r = _Reader(_tokenize(text, line), line)
    if len(r.toks) >= 2 and r.toks[1] == ":":
        r.take()
        r.take(":")
    linear = r.linear(stop={"["})
    quadratic = []
    if r.peek() is not None:
        if r.peek() in ("+", "-"):
            if r.take() == "-":
                raise LpParseError("negated quadratic group is not supported", line)
        r.take("[")
        while r.peek() != "]":
            if r.peek() is None:
                raise LpParseError("unterminated quadratic group", line)
            coef = r.signed_coef(first=not quadratic)
            a = r.name()
            if r.peek() == "^":
                r.take()
                if _int(r.take(), line) != 2:
                    raise LpParseError("only squares are supported", line)
                b = a
            else:
                r.take("*")
                b = r.name()
            if coef % 2:
                raise LpParseError("quadratic coefficient is not even", line)
            quadratic.append((a, b, coef // 2))
        r.take("]")
        r.take("/")
        if _int(r.take(), line) != 2:
            raise LpParseError("quadratic group must be divided by 2", line)
    if r.peek() is not None:
        raise LpParseError(f"trailing tokens in objective: {r.peek()!r}", line)
    return linear, quadratic


def _parse_constraint(text, line):
    r = _Reader(_tokenize(text, line), line)
    if not (len(r.toks) >= 2 and r.toks[1] == ":"):
        raise LpParseError("constraint without a name", line)
    name = r.take()
    r.take(":")
    terms = r.linear(stop={"<=", ">=", "=", "=<", "=>", "<", ">"})
    sense = r.take()
    sense = {"=<": "<=", "<": "<=", "=>": ">=", ">": ">="}.get(sense, sense)
    if sense not in ("<=", ">=", "="):
        raise LpParseError(f"bad constraint sense {sense!r}", line)
    rhs = r.signed_coef(first=True) if r.peek() in ("+", "-") else _int(r.take(), line)
    if r.peek() is not None:
        raise LpParseError(f"trailing tokens in constraint {name}", line)
    return Constraint(name, tuple(terms), sense, rhs)


def _parse_bound(text, line):
    toks = text.split()
    if len(toks) == 2 and toks[1].lower() == "free":
        return toks[0], None, None
    if len(toks) == 5 and toks[1] == "<=" and toks[3] == "<=":
        lo = None if toks[0] in ("-inf", "-infinity") else _int(toks[0], line)
        hi = None if toks[4] in ("+inf", "inf", "+infinity") else _int(toks[4], line)
        return toks[2], lo, hi
    raise LpParseError(f"unsupported bound {text.strip()!r}", line)


def parse_lp(text: str):
    """Parse LP text produced by :func:`emit_lp`.

    Returns a :class:`MiqpModel` when the objective carries a quadratic group
    or a diagonal shift comment, else a :class:`MilpModel`.

    Raises:
        MalformedSectionError: sections missing, repeated or out of order.
        UnknownVariableError: a variable is used but never declared in
            ``Bounds`` or ``Binaries``.
        DuplicateBoundError: a variable is bounded twice.
        LpParseError: any other syntax problem.
    """
    name = "qubo-milp"
    kind = None
    offset = 0
    shift = []
    section = None
    seen = []
    chunks = {s: [] for s in _ORDER}
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("\\"):
            body = stripped[1:].strip()
            key, _, val = body.partition(":")
            key = key.strip().lower()
            if key == "problem name":
                name = val.strip()
            elif key == "formulation":
                kind = val.strip().lower()
                if kind not in ("milp", "miqp"):
                    raise LpParseError(f"unknown formulation {kind!r}", lineno)
            elif key == "objective offset":
                offset = _int(val.strip(), lineno)
            elif key == "diagonal shift":
                toks = val.split()
                if len(toks) % 2:
                    raise LpParseError("odd number of tokens in diagonal shift", lineno)
                for var, d in zip(toks[::2], toks[1::2]):
                    if not var.startswith("x"):
                        raise LpParseError(f"bad shift variable {var!r}", lineno)
                    shift.append((_int(var[1:], lineno), _int(d, lineno)))
            continue
        key = " ".join(stripped.lower().split())
        if key in _SECTIONS and not raw[:1].isspace():
            new = _SECTIONS[key]
            if new in seen:
                raise MalformedSectionError(f"section {stripped!r} repeated", lineno)
            if seen and _ORDER.index(new) < _ORDER.index(seen[-1]):
                raise MalformedSectionError(f"section {stripped!r} out of order", lineno)
            if not seen and new != "objective":
                raise MalformedSectionError("file must start with Minimize", lineno)
            seen.append(new)
            section = new
            continue
        if section is None:
            raise MalformedSectionError("content before the Minimize section", lineno)
        if section == "end":
            raise MalformedSectionError("content after End", lineno)
        if raw[:1].isspace() and raw.startswith("   ") and chunks[section] and section != "bounds":
            text_so_far, first = chunks[section][-1]
            chunks[section][-1] = (text_so_far + " " + stripped, first)
        else:
            chunks[section].append((stripped, lineno))
    if "end" not in seen:
        raise MalformedSectionError("missing End")
    if "objective" not in seen:
        raise MalformedSectionError("missing Minimize")

    if len(chunks["objective"]) > 1:
        raise LpParseError("objective spans several expressions", chunks["objective"][1][1])
    linear, quadratic = ([], [])
    if chunks["objective"]:
        linear, quadratic = _parse_objective(*chunks["objective"][0])
    constraints = [_parse_constraint(t, ln) for t, ln in chunks["constraints"]]
    bounds = []
    bounded = set()
    for t, ln in chunks["bounds"]:
        b = _parse_bound(t, ln)
        if b[0] in bounded:
            raise DuplicateBoundError(f"variable {b[0]} bounded twice", ln)
        bounded.add(b[0])
        bounds.append(b)
    binaries = []
    for t, ln in chunks["binaries"]:
        for tok in t.split():
            if not _NAME.match(tok):
                raise LpParseError(f"bad binary name {tok!r}", ln)
            if tok in bounded or tok in binaries:
                raise DuplicateBoundError(f"variable {tok} declared twice", ln)
            binaries.append(tok)

    declared = bounded | set(binaries)
    used = [v for v, _ in linear] + [v for a, b, _ in quadratic for v in (a, b)]
    used += [v for c in constraints for v, _ in c.terms]
    used += [f"x{v}" for v, _ in shift]
    for v in used:
        if v not in declared:
            raise UnknownVariableError(f"variable {v} is not declared")

    if kind is None:
        kind = "miqp" if quadratic or shift else "milp"
    if kind == "milp" and (quadratic or shift):
        raise LpParseError("quadratic terms in a milp file")
    if kind == "miqp":
        if constraints or bounds:
            raise LpParseError("quadratic models with constraints are not supported")
        return MiqpModel(tuple(linear), tuple(quadratic), offset, tuple(binaries),
                         tuple(shift), name)
    return MilpModel(tuple(linear), offset, tuple(constraints), tuple(bounds),
                     tuple(binaries), name)

"""S-expression front end for the formula language.

Grammar (whitespace-separated, case-sensitive):

    formula := (eq a b) | (inc e v) | (in x SET) | (subseteq SET SET)
             | (not f) | (and f ...) | (or f ...)
             | (implies f g) | (iff f g)
             | (exists-v x f)  | (forall-v x f)
             | (exists-e x f)  | (forall-e x f)
             | (exists-vs X f) | (forall-vs X f)
             | (exists-es X f) | (forall-es X f)
             | (exists-vs-sub X SET f) | (forall-vs-sub X SET f)
             | (exists-es-sub X SET f) | (forall-es-sub X SET f)
             | (conn SET SET) | (conn2 SET SET)
             | (cycle SET SET) | (tree SET SET) | (path SET SET)
             | (path-between s t SET)
             | (card= SET k) | (card<= SET k) | (card>= SET k)
             | (deg= v SET k) | (deg<= v SET k) | (deg>= v SET k)
    SET     := name | (union SET SET) | (inter SET SET) | (minus SET SET)
             | (incv SET) | (ince SET)

Names refer to quantified variables or to the structure's constants
(e.g. V, E, E_T, E_C, F, X0..Xk, r).
"""

from __future__ import annotations

from .formula import (
    And, CardCmp, Conn, Conn2, DegCmp, Eq, Formula, Iff, Implies, In, Inc,
    IncE, IncV, IsCycle, IsPath, IsTree, MsoError, Not, Or, PathBetween,
    Quant, SetName, SetOp, SetQuant, SetTerm, SubsetEq,
)


class ParseError(MsoError):
    pass


def _tokenize(text: str) -> list[str]:
    out: list[str] = []
    cur = ""
    for ch in text:
        if ch in "()":
            if cur:
                out.append(cur)
                cur = ""
            out.append(ch)
        elif ch.isspace():
            if cur:
                out.append(cur)
                cur = ""
        else:
            cur += ch
    if cur:
        out.append(cur)
    return out


def _read(tokens: list[str], pos: int):
    if pos >= len(tokens):
        raise ParseError("unexpected end of input")
    tok = tokens[pos]
    if tok == "(":
        items = []
        pos += 1
        while pos < len(tokens) and tokens[pos] != ")":
            item, pos = _read(tokens, pos)
            items.append(item)
        if pos >= len(tokens):
            raise ParseError("missing closing parenthesis")
        return items, pos + 1
    if tok == ")":
        raise ParseError("unexpected ')'")
    return tok, pos + 1


def _set_term(x) -> SetTerm:
    if isinstance(x, str):
        return SetName(x)
    if not x:
        raise ParseError("empty set term")
    head = x[0]
    if head in ("union", "inter", "minus"):
        if len(x) != 3:
            raise ParseError(f"{head} takes two arguments")
        return SetOp(head, _set_term(x[1]), _set_term(x[2]))
    if head == "incv":
        return IncV(_set_term(x[1]))
    if head == "ince":
        return IncE(_set_term(x[1]))
    raise ParseError(f"unknown set constructor {head!r}")


_QUANT = {
    "exists-v": ("exists", "vertex", False),
    "forall-v": ("forall", "vertex", False),
    "exists-e": ("exists", "edge", False),
    "forall-e": ("forall", "edge", False),
    "exists-vs": ("exists", "vertex", True),
    "forall-vs": ("forall", "vertex", True),
    "exists-es": ("exists", "edge", True),
    "forall-es": ("forall", "edge", True),
}

_CMP = {"card=": "eq", "card<=": "le", "card>=": "ge",
        "deg=": "eq", "deg<=": "le", "deg>=": "ge"}


def _formula(x) -> Formula:
    if isinstance(x, str):
        raise ParseError(f"bare name {x!r} is not a formula")
    if not x:
        raise ParseError("empty formula")
    head = x[0]
    if head == "eq":
        return Eq(x[1], x[2])
    if head == "inc":
        return Inc(x[1], x[2])
    if head == "in":
        return In(x[1], _set_term(x[2]))
    if head == "subseteq":
        return SubsetEq(_set_term(x[1]), _set_term(x[2]))
    if head == "not":
        return Not(_formula(x[1]))
    if head == "and":
        return And(*[_formula(g) for g in x[1:]])
    if head == "or":
        return Or(*[_formula(g) for g in x[1:]])
    if head == "implies":
        return Implies(_formula(x[1]), _formula(x[2]))
    if head == "iff":
        return Iff(_formula(x[1]), _formula(x[2]))
    if head in _QUANT:
        kind, sort, is_set = _QUANT[head]
        if not isinstance(x[1], str):
            raise ParseError("quantified variable must be a name")
        if is_set:
            return SetQuant(kind, x[1], sort, _formula(x[2]))
        return Quant(kind, x[1], sort, _formula(x[2]))
    if head in ("exists-vs-sub", "forall-vs-sub", "exists-es-sub", "forall-es-sub"):
        kind = "exists" if head.startswith("exists") else "forall"
        sort = "vertex" if "-vs-" in head else "edge"
        return SetQuant(kind, x[1], sort, _formula(x[3]), bound=_set_term(x[2]))
    if head == "conn":
        return Conn(_set_term(x[1]), _set_term(x[2]))
    if head == "conn2":
        return Conn2(_set_term(x[1]), _set_term(x[2]))
    if head == "cycle":
        return IsCycle(_set_term(x[1]), _set_term(x[2]))
    if head == "tree":
        return IsTree(_set_term(x[1]), _set_term(x[2]))
    if head == "path":
        return IsPath(_set_term(x[1]), _set_term(x[2]))
    if head == "path-between":
        return PathBetween(x[1], x[2], _set_term(x[3]))
    if head in ("card=", "card<=", "card>="):
        return CardCmp(_set_term(x[1]), _CMP[head], int(x[2]))
    if head in ("deg=", "deg<=", "deg>="):
        return DegCmp(x[1], _set_term(x[2]), _CMP[head], int(x[3]))
    raise ParseError(f"unknown form {head!r}")


def parse_formula(text: str) -> Formula:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input")
    tree, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise ParseError("trailing tokens after formula")
    try:
        return _formula(tree)
    except ParseError:
        raise
    except (IndexError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed formula: {exc}") from exc

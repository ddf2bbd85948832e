"""Command dispatch, REPL loop, and batch script mode with JSON output.

Commands (one per line)::

    :num <set>              numerosity of a set expression
    :cmp <e1> <e2>          compare (numerosity, ordinal, or surreal operands)
    :st <expr>              standard part
    :measure <set> <gamma>  gamma-measure of a set
    :ord <expr>             ordinal arithmetic (+ * natural, +. *. Cantor, ^<> power)
    :sur <a> (+|-|*) <b>    surreal arithmetic on sign strings / dyadics
    :simplest {..} {..}     earliest-born number between two dyadic sets
    :labelcheck <file> [literal|hereditary]   validate a pivotal-tree instance
    :assert_order <m1> < <m2>   extend the session order table (alpha^k universal)
    :mode_bb on|off         rewrite beth1 = beta + X on input
    :help  :quit

Script mode emits one JSON object per input line:
{"input":..., "kind":..., "value":..., "status":...}; exit 0 on success, 1 on
a parse error, 2 on an evaluation error, 3 if a strict-mode :cmp was unknown
(precedence 1 > 2 > 3 when several occur).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import field, labtree, ordinals, sets, surreal
from .field import AxiomTable, Comparison, StandardPart
from .parser import (
    OrderAssertion,
    ParseError,
    TokenStream,
    parse_numexpr,
    parse_order_assertion,
    parse_ordinal_expr,
    parse_setexpr,
)


@dataclass
class Session:
    table: AxiomTable = AxiomTable()
    strict_cmp: bool = False
    done: bool = False


HELP_TEXT = (
    "commands: :num :cmp :st :measure :ord :sur :simplest :labelcheck "
    ":assert_order :mode_bb :help :quit"
)


def _is_surreal_literal(tok: str) -> bool:
    if tok == "()" or tok.startswith("plus("):
        return True
    return bool(tok) and all(c in "+-" for c in tok)


def _parse_surreal_operand(tok: str) -> surreal.SignExpansion:
    if tok.startswith("plus(") and tok.endswith(")"):
        from .parser import parse_ordinal

        return surreal.ordinal_plus(parse_ordinal(tok[5:-1]))
    if tok == "()" or (tok and all(c in "+-" for c in tok)):
        return surreal.parse_signs(tok)
    if "/" in tok:
        num_s, den_s = tok.split("/", 1)
        den = int(den_s.split("^")[0]) ** int(den_s.split("^")[1]) if "^" in den_s else int(den_s)
        value = Fraction(int(num_s), den)
    else:
        value = Fraction(int(tok))
    return surreal.se_from_dyadic(value)


def _fmt_cmp(c: Comparison) -> tuple[str, str]:
    if c.kind == field.UNKNOWN:
        return (f"unknown ({c.reason})" if c.reason else "unknown"), "unknown"
    return c.kind, "exact"


def _fmt_st(st: StandardPart) -> tuple[str, str]:
    if st.kind == field.UNKNOWN:
        return (f"unknown ({st.reason})" if st.reason else "unknown"), "unknown"
    if st.kind == field.FINITE:
        q = st.value
        return (str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"), "exact"
    return st.kind, "exact"


def _dyadic_set(text: str) -> list[Fraction]:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError(0, "a brace-enclosed set of dyadics", text)
    body = text[1:-1].strip()
    if not body:
        return []
    out = []
    for part in body.split(","):
        ts = TokenStream(part.strip())
        from .parser import parse_rational

        q = parse_rational(ts)
        if not ts.done():
            ts.fail("end of rational")
        if not surreal.is_dyadic(q):
            raise ParseError(0, f"a dyadic rational (got {q})", part)
        out.append(q)
    return out


def eval_line(line: str, session: Session) -> dict:
    """Evaluate one command line; mutates the session for :assert_order etc."""
    record = {"input": line, "kind": "report", "value": "", "status": "exact"}
    stripped = line.strip()
    if not stripped.startswith(":"):
        raise ParseError(0, "a command starting with ':'", line)
    verb, _, rest = stripped.partition(" ")
    rest = rest.strip()

    if verb == ":quit":
        session.done = True
        record["value"] = "bye"
        return record
    if verb == ":help":
        record["value"] = HELP_TEXT
        return record
    if verb == ":mode_bb":
        if rest not in ("on", "off"):
            raise ParseError(0, "'on' or 'off'", rest)
        session.table = session.table.with_bb(rest == "on")
        record["value"] = f"bb_mode={rest}"
        return record
    if verb == ":assert_order":
        a: OrderAssertion = parse_order_assertion(rest)
        if a.universal_alpha:
            session.table = session.table.with_alpha_dominated_by(a.rhs)
        else:
            session.table = session.table.with_order(a.lhs, a.rhs)
        record["value"] = "ok"
        return record

    if verb == ":num":
        e = _parse_whole_set(rest)
        value = field.apply_bb(sets.num(e), session.table)
        record.update(kind="numexpr", value=field.format_numexpr(value))
        return record

    if verb == ":cmp":
        kind, value, status = _eval_cmp(rest, session)
        record.update(kind=kind, value=value, status=status)
        return record

    if verb == ":st":
        ts = TokenStream(rest)
        x = parse_numexpr(ts)
        if not ts.done():
            ts.fail("end of expression")
        st = field.standard_part(field.apply_bb(x, session.table), session.table)
        value, status = _fmt_st(st)
        record.update(value=value, status=status)
        return record

    if verb == ":measure":
        ts = TokenStream(rest)
        e = parse_setexpr(ts)
        gamma = parse_numexpr(ts)
        if not ts.done():
            ts.fail("end of expression")
        st = sets.measure(e, field.apply_bb(gamma, session.table), session.table)
        value, status = _fmt_st(st)
        record.update(value=value, status=status)
        return record

    if verb == ":ord":
        ts = TokenStream(rest)
        o = parse_ordinal_expr(ts)
        if not ts.done():
            ts.fail("end of ordinal expression")
        record.update(kind="ordinal", value=ordinals.format_ordinal(o))
        return record

    if verb == ":sur":
        toks = rest.split()
        if not toks:
            raise ParseError(0, "a surreal expression", rest)
        acc = _parse_surreal_operand(toks[0])
        i = 1
        while i < len(toks):
            op = toks[i]
            if op not in "+-*" or i + 1 >= len(toks):
                raise ParseError(0, "an operator (+, -, *) and an operand", rest)
            rhs = _parse_surreal_operand(toks[i + 1])
            if op == "+":
                acc = surreal.s_add(acc, rhs)
            elif op == "-":
                acc = surreal.s_sub(acc, rhs)
            else:
                acc = surreal.s_mul(acc, rhs)
            i += 2
        record.update(kind="surreal", value=str(acc))
        return record

    if verb == ":simplest":
        parts = rest.split("}")
        if len(parts) < 2:
            raise ParseError(0, "two brace-enclosed dyadic sets", rest)
        left = _dyadic_set(parts[0] + "}")
        right = _dyadic_set(parts[1].strip() + "}")
        out = surreal.simplest(left, right)
        record.update(kind="surreal", value=str(out))
        return record

    if verb == ":labelcheck":
        toks = rest.split()
        if not toks:
            raise ParseError(0, "an instance file path", rest)
        mode = toks[1] if len(toks) > 1 else "literal"
        with open(toks[0], "r", encoding="utf-8") as fh:
            tree = labtree.parse_instance(fh.read())
        pivotal = labtree.validate_pivotal(tree, mode)
        reports = [pivotal]
        if pivotal.ok:
            reports.append(labtree.validate_labeltree(tree, mode))
        record.update(value="[" + ", ".join(r.to_json() for r in reports) + "]")
        return record

    raise ParseError(0, f"a known command (got {verb!r})", line)


def _parse_whole_set(text: str) -> sets.SetExpr:
    ts = TokenStream(text)
    e = parse_setexpr(ts)
    if not ts.done():
        ts.fail("end of set expression")
    return e


def _eval_cmp(rest: str, session: Session) -> tuple[str, str, str]:
    toks = rest.split()
    if len(toks) == 2 and all(_is_surreal_literal(t) for t in toks):
        a, b = (_parse_surreal_operand(t) for t in toks)
        c = surreal.se_cmp(a, b)
        return "report", {-1: "less", 0: "equal", 1: "greater"}[c], "exact"
    if any(op in rest for op in ("+.", "*.", "^<>")):
        ts = TokenStream(rest)
        a = parse_ordinal_expr(ts)
        b = parse_ordinal_expr(ts)
        if not ts.done():
            ts.fail("end of ordinal comparison")
        c = ordinals.ord_cmp(a, b)
        return "report", {-1: "less", 0: "equal", 1: "greater"}[c], "exact"
    ts = TokenStream(rest)
    a = parse_numexpr(ts)
    b = parse_numexpr(ts)
    if not ts.done():
        ts.fail("end of comparison")
    a = field.apply_bb(a, session.table)
    b = field.apply_bb(b, session.table)
    value, status = _fmt_cmp(field.nf_cmp(a, b, session.table))
    return "report", value, status


_CORE_ERRORS = (
    ValueError,
    ZeroDivisionError,
    KeyError,
    OSError,
)


def run_line(line: str, session: Session) -> tuple[dict, Optional[str]]:
    """Evaluate one line; returns (record, error_class) with class in
    {'parse', 'eval', None}."""
    try:
        return eval_line(line, session), None
    except ParseError as exc:
        return (
            {"input": line, "kind": "report", "value": f"ParseError: {exc}", "status": "error"},
            "parse",
        )
    except _CORE_ERRORS as exc:
        name = type(exc).__name__
        return (
            {"input": line, "kind": "report", "value": f"{name}: {exc}", "status": "error"},
            "eval",
        )


def run_script(path: str, strict_cmp: bool = False, bb: bool = False,
               out=None) -> int:
    """Run a command file; one JSON line per input line; returns the exit code."""
    out = out if out is not None else sys.stdout
    session = Session(AxiomTable(bb_mode=bb), strict_cmp=strict_cmp)
    saw_parse = saw_eval = saw_unknown = False
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        record, err = run_line(line, session)
        if err == "parse":
            saw_parse = True
        elif err == "eval":
            saw_eval = True
        if (
            strict_cmp
            and line.startswith(":cmp")
            and record["status"] == "unknown"
        ):
            saw_unknown = True
        print(json.dumps(record, sort_keys=True), file=out)
        if session.done:
            break
    if saw_parse:
        return 1
    if saw_eval:
        return 2
    if saw_unknown:
        return 3
    return 0


def repl(session: Session, json_mode: bool = False) -> None:
    print("numerosity calculator; :help for commands, :quit to leave")
    while not session.done:
        try:
            line = input("num> ")
        except EOFError:
            break
        if not line.strip():
            continue
        record, _ = run_line(line, session)
        if json_mode:
            print(json.dumps(record, sort_keys=True))
        elif record["status"] == "error":
            print(record["value"])
        else:
            print(f"{record['value']}    [{record['kind']}, {record['status']}]")


def main(argv: Optional[list[str]] = None) -> int:
    ap = argparse.ArgumentParser(prog="numerosity", description=__doc__)
    ap.add_argument("--script", help="run commands from a file and emit JSON lines")
    ap.add_argument("--strict-cmp", action="store_true",
                    help="exit 3 when a :cmp stays unknown")
    ap.add_argument("--bb", action="store_true", help="start with bb_mode on")
    ap.add_argument("--json", action="store_true", help="JSON output in the REPL")
    args = ap.parse_args(argv)
    if args.script:
        return run_script(args.script, args.strict_cmp, args.bb)
    repl(Session(AxiomTable(bb_mode=args.bb), strict_cmp=args.strict_cmp), args.json)
    return 0


if __name__ == "__main__":
    sys.exit(main())

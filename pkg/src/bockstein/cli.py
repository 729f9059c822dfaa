"""Command-line front end for the dimension-type calculus.

Subcommands:

  eval EXPR          evaluate a query or a cd-type expression
  table KIND         emit the fundamental-dimension or product table
  decompose EXPR     wedge decomposition of a positive cd-type
  sigma GROUP        Bockstein family of a group expression
  verify TARGET      run a finite homology verification
  check-laws         run the algebra-law suite over a finite universe

The expression language uses `[+]`, `[x]` and `\\/` as infix operators
with precedence [x] > [+] > \\/, all left associative; `prod`, `times`
and `wedge` are equivalent function spellings.  Infinity is the token
`inf` on input and output.  Exit codes: 0 success, 1 verification
failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import gcd

from . import chains, simplicial
from .cdtype import Basis, CdType, decompose, nat, phi_basis
from .dimension import dim, fundamental_product_dim, test_space
from .groups import Q, SumOverPrimes, Z, Zinv, Zloc, Zmod, ZpInf, sigma
from .oracle import Universe, check_laws, render_reports
from .primes import (
    ALL_PRIMES,
    INF,
    NEG_INF,
    PrimeFn,
    PrimeSet,
    UndefinedArithmetic,
    check_prime,
    value_to_json,
)

__all__ = [
    "CliError",
    "emit_table",
    "evaluate",
    "main",
    "parse",
    "parse_cdexpr",
    "parse_group",
    "verify",
]


class CliError(Exception):
    """A user-facing error: bad syntax or an invalid argument."""


# -- tokenizer ---------------------------------------------------------------

_PUNCT = "(){},=:^/+-"
_OPS = ("[+]", "[x]", "\\/")


def _tokenize(text):
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        hit = next((op for op in _OPS if text.startswith(op, i)), None)
        if hit is not None:
            out.append((hit, hit, i))
            i += len(hit)
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("NUM", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(("IDENT", text[i:j], i))
            i = j
            continue
        if ch in _PUNCT:
            out.append((ch, ch, i))
            i += 1
            continue
        raise CliError(f"syntax error at position {i}: "
                       f"unexpected character {ch!r}")
    out.append(("EOF", "", n))
    return out


# -- recursive-descent parser ------------------------------------------------

_QUERY_ARITY = {
    "norm": ("cd",),
    "inorm": ("cd",),
    "dim": ("cd", "group"),
    "sigma": ("group",),
    "decompose": ("cd",),
    "leq": ("cd", "cd"),
    "phi": ("cd",),
}

_FN_ALIAS = {"prod": "sum", "times": "times", "wedge": "wedge"}

_BASIS_KINDS = {"Zp": Basis.zp, "Zpinf": Basis.zpinf, "Zloc": Basis.zloc}


class _Parser:
    __slots__ = ("tokens", "pos")

    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self, ahead=0):
        k = min(self.pos + ahead, len(self.tokens) - 1)
        return self.tokens[k]

    def advance(self):
        tok = self.tokens[self.pos]
        if tok[0] != "EOF":
            self.pos += 1
        return tok

    def accept(self, kind, text=None):
        tok = self.peek()
        if tok[0] == kind and (text is None or tok[1] == text):
            return self.advance()
        return None

    def expect(self, kind, what=None):
        tok = self.accept(kind)
        if tok is None:
            bad = self.peek()
            shown = repr(bad[1]) if bad[0] != "EOF" else "end of input"
            raise CliError(f"syntax error at position {bad[2]}: "
                           f"expected {what or kind}, got {shown}")
        return tok

    def expect_eof(self):
        tok = self.peek()
        if tok[0] != "EOF":
            raise CliError(f"syntax error at position {tok[2]}: "
                           f"unexpected trailing input {tok[1]!r}")

    # queries

    def query(self):
        tok = self.peek()
        if (tok[0] == "IDENT" and tok[1] in _QUERY_ARITY
                and self.peek(1)[0] == "("):
            name = self.advance()[1]
            self.expect("(")
            args = []
            for i, slot in enumerate(_QUERY_ARITY[name]):
                if i:
                    self.expect(",")
                args.append(self.cdexpr() if slot == "cd" else self.group())
            self.expect(")")
            return ("query", name, tuple(args))
        return ("cdexpr", self.cdexpr())

    # cd-type expressions, precedence [x] > [+] > \/

    def cdexpr(self):
        node = self.pterm()
        while self.accept("\\/"):
            node = ("wedge", node, self.pterm())
        return node

    def pterm(self):
        node = self.xterm()
        while self.accept("[+]"):
            node = ("sum", node, self.xterm())
        return node

    def xterm(self):
        node = self.atom()
        while self.accept("[x]"):
            node = ("times", node, self.atom())
        return node

    def atom(self):
        if self.accept("("):
            node = self.cdexpr()
            self.expect(")")
            return node
        tok = self.expect("IDENT", "a cd-type expression")
        name = tok[1]
        if name == "Phi":
            self.expect("(")
            basis = self.basis()
            self.expect(",")
            level = self.nat()
            self.expect(")")
            return ("value", self._guard(tok, phi_basis, basis, level))
        if name == "nat":
            self.expect("(")
            level = self.nat()
            self.expect(")")
            return ("value", self._guard(tok, nat, level))
        if name == "triple":
            return ("value", self.triple(tok))
        if name == "conj":
            self.expect("(")
            node = self.cdexpr()
            self.expect(")")
            return ("conj", node)
        if name == "pow":
            self.expect("(")
            node = self.cdexpr()
            self.expect(",")
            k = self.nat()
            self.expect(")")
            return ("pow", node, k)
        if name == "test":
            self.expect("(")
            grp = self.group()
            self.expect(",")
            level = self.nat()
            self.expect(")")
            return ("value", self._guard(tok, test_space, grp, level))
        if name in _FN_ALIAS:
            self.expect("(")
            left = self.cdexpr()
            self.expect(",")
            right = self.cdexpr()
            self.expect(")")
            return (_FN_ALIAS[name], left, right)
        raise CliError(f"syntax error at position {tok[2]}: "
                       f"unknown form {name!r}")

    @staticmethod
    def _guard(tok, fn, *args):
        try:
            return fn(*args)
        except ValueError as exc:
            raise CliError(f"at position {tok[2]}: {exc}") from exc

    def triple(self, tok):
        self.expect("(")
        self.expect_ident("S")
        self.expect("=")
        s = self.prime_set()
        self.expect(",")
        self.expect_ident("D")
        self.expect("=")
        d_set = self.prime_set()
        self.expect(",")
        self.expect_ident("d")
        self.expect("=")
        fn = self.dspec()
        self.expect(")")
        return self._guard(tok, CdType.triple, s, d_set, fn)

    def expect_ident(self, text):
        tok = self.peek()
        if tok[0] == "IDENT" and tok[1] == text:
            return self.advance()
        shown = repr(tok[1]) if tok[0] != "EOF" else "end of input"
        raise CliError(f"syntax error at position {tok[2]}: "
                       f"expected {text!r}, got {shown}")

    def basis(self):
        tok = self.expect("IDENT", "a basis kind (Q, Zp, Zpinf, Zloc)")
        if tok[1] == "Q":
            return Basis.q()
        maker = _BASIS_KINDS.get(tok[1])
        if maker is None:
            raise CliError(f"at position {tok[2]}: not a Bockstein basis "
                           f"kind: {tok[1]!r} (expected Q, Zp, Zpinf, Zloc)")
        self.expect("(")
        p = self.prime()
        self.expect(")")
        return maker(p)

    def prime_set(self):
        tok = self.peek()
        if tok[0] == "IDENT" and tok[1] == "all":
            self.advance()
            if self.accept("-"):
                self.expect("{")
                primes = self.prime_list()
                self.expect("}")
                return PrimeSet.all_except(*primes)
            return ALL_PRIMES
        self.expect("{")
        primes = self.prime_list() if self.peek()[0] == "NUM" else []
        self.expect("}")
        return PrimeSet.of(*primes)

    def prime_list(self):
        primes = [self.prime()]
        while self.accept(","):
            primes.append(self.prime())
        return primes

    def dspec(self):
        self.expect("{")
        at_zero = None
        default = None
        exceptions = {}
        while True:
            tok = self.peek()
            if tok[0] == "IDENT" and tok[1] in ("zero", "default"):
                self.advance()
                self.expect(":")
                value = self.val()
                if tok[1] == "zero":
                    at_zero = value
                else:
                    default = value
            else:
                p = self.prime()
                self.expect(":")
                exceptions[p] = self.val()
            if not self.accept(","):
                break
        self.expect("}")
        if default is None:
            tok = self.peek()
            raise CliError(f"syntax error at position {tok[2]}: "
                           "d-spec needs a default value")
        if at_zero is None:
            at_zero = default
        return PrimeFn(at_zero, default, exceptions)

    def val(self):
        negate = self.accept("-") is not None
        tok = self.peek()
        if tok[0] == "NUM":
            self.advance()
            v = int(tok[1])
            return -v if negate else v
        if tok[0] == "IDENT" and tok[1] == "inf":
            self.advance()
            return NEG_INF if negate else INF
        shown = repr(tok[1]) if tok[0] != "EOF" else "end of input"
        raise CliError(f"syntax error at position {tok[2]}: "
                       f"expected a value, got {shown}")

    def nat(self):
        tok = self.expect("NUM", "a natural number")
        return int(tok[1])

    def prime(self):
        tok = self.expect("NUM", "a prime")
        try:
            return check_prime(int(tok[1]))
        except ValueError as exc:
            raise CliError(f"at position {tok[2]}: {exc}") from exc

    # group expressions

    def group(self):
        node = self.group_atom()
        while self.accept("+"):
            node = node + self.group_atom()
        return node

    def group_atom(self):
        tok = self.expect("IDENT", "a group expression")
        name = tok[1]
        if name == "Q":
            return Q
        if name == "Z":
            if self.accept("/"):
                p = self.prime()
                k = 1
                if self.accept("^"):
                    k = self.nat()
                return self._guard(tok, Zmod, p, k)
            return Z
        if name == "Zpinf":
            self.expect("(")
            p = self.prime()
            self.expect(")")
            return ZpInf(p)
        if name == "Zloc":
            self.expect("{")
            primes = self.prime_list() if self.peek()[0] == "NUM" else []
            self.expect("}")
            return Zloc(primes)
        if name == "Zinv":
            self.expect("(")
            p = self.prime()
            self.expect(")")
            return Zinv(p)
        if name == "SumAll":
            self.expect("(")
            pattern = self.sum_pattern()
            self.expect(")")
            return SumOverPrimes(ALL_PRIMES, pattern)
        if name == "SumOver":
            self.expect("(")
            self.expect("{")
            primes = self.prime_list()
            self.expect("}")
            self.expect(",")
            pattern = self.sum_pattern()
            self.expect(")")
            return SumOverPrimes(primes, pattern)
        raise CliError(f"syntax error at position {tok[2]}: "
                       f"unknown group {name!r}")

    def sum_pattern(self):
        tok = self.expect("IDENT", "Zp or Zpinf")
        if tok[1] == "Zp":
            return "Zp"
        if tok[1] == "Zpinf":
            return "ZpInf"
        raise CliError(f"at position {tok[2]}: the summand pattern must "
                       f"be Zp or Zpinf, not {tok[1]!r}")


def parse(text):
    """Parse a query or a bare cd-type expression.

    >>> parse("inorm(nat(5))")[0]
    'query'
    """
    ps = _Parser(text)
    node = ps.query()
    ps.expect_eof()
    return node


def parse_cdexpr(text):
    ps = _Parser(text)
    node = ps.cdexpr()
    ps.expect_eof()
    return node


def parse_group(text):
    ps = _Parser(text)
    node = ps.group()
    ps.expect_eof()
    return node


# -- evaluation --------------------------------------------------------------

def _eval_cd(node) -> CdType:
    tag = node[0]
    if tag == "value":
        return node[1]
    if tag == "conj":
        return _eval_cd(node[1]).conjugate()
    if tag == "pow":
        return _eval_cd(node[1]).scale(node[2])
    left = _eval_cd(node[1])
    right = _eval_cd(node[2])
    if tag == "sum":
        return left.sum(right)
    if tag == "times":
        return left.times(right)
    return left.wedge(right)


def _fn_body(fn: PrimeFn, with_zero=False):
    pieces = [f"zero: {fn.at_zero}"] if with_zero else []
    pieces.append(f"default: {fn.default}")
    pieces.extend(f"{p}: {v}" for p, v in fn.exceptions)
    return "{" + ", ".join(pieces) + "}"


def _fn_json(fn: PrimeFn):
    out = {"default": value_to_json(fn.default)}
    for p, v in fn.exceptions:
        out[str(p)] = value_to_json(v)
    return out


def _phi_text(phi):
    return (f"Q: {phi.phi_q}; Zp: {_fn_body(phi.zp)}; "
            f"Zpinf: {_fn_body(phi.zpinf)}; Zloc: {_fn_body(phi.zloc)}")


def _phi_json(phi):
    return {"Q": value_to_json(phi.phi_q), "Zp": _fn_json(phi.zp),
            "Zpinf": _fn_json(phi.zpinf), "Zloc": _fn_json(phi.zloc)}


_ENTRY_SPELLING = {"Zloc": "Zloc", "Zp": "Zp", "ZpInf": "Zpinf"}


def _decomposition_text(dec):
    parts = []
    for kind, over, value in dec.entries():
        if kind == "Q":
            parts.append(f"Phi(Q, {value})")
            continue
        spelled = _ENTRY_SPELLING[kind]
        if over.is_finite:
            parts.extend(f"Phi({spelled}({p}), {value})"
                         for p in sorted(over.primes))
        else:
            parts.append(f"Phi({spelled}(p), {value}) "
                         f"for p in {over.render()}")
    return " \\/ ".join(parts) if parts else "nat(1)"


def _decomposition_json(dec):
    return {"Q": value_to_json(dec.k_q), "Zloc": _fn_json(dec.k_zloc),
            "Zp": _fn_json(dec.k_zp), "ZpInf": _fn_json(dec.k_zpinf)}


def _family_json(fam):
    return {"has_q": fam.has_q, "loc": fam.loc.to_json(),
            "zp": fam.zp.to_json(), "zpinf": fam.zpinf.to_json()}


def evaluate(parsed):
    """Evaluate a parsed query; a dict with `text` and `json` renderings.

    >>> evaluate(parse("norm(Phi(Zp(2),3) [+] Phi(Q,2))"))["text"]
    '4'
    >>> evaluate(parse("dim(nat(3), Z/2^2)"))["text"]
    '3'
    >>> evaluate(parse("inorm(nat(5))"))["text"]
    '5'
    """
    if parsed[0] == "cdexpr":
        f = _eval_cd(parsed[1])
        return {"text": f.render(),
                "json": {"query": "value", "value": f.to_json()}}
    _, name, args = parsed
    if name in ("norm", "inorm"):
        f = _eval_cd(args[0])
        v = f.norm() if name == "norm" else f.inferior_norm()
        return {"text": str(v),
                "json": {"query": name, "value": value_to_json(v)}}
    if name == "dim":
        v = dim(_eval_cd(args[0]), args[1])
        return {"text": str(v),
                "json": {"query": name, "value": value_to_json(v)}}
    if name == "sigma":
        fam = sigma(args[0])
        return {"text": fam.render(),
                "json": {"query": name, "value": _family_json(fam)}}
    if name == "decompose":
        dec = decompose(_eval_cd(args[0]))
        return {"text": _decomposition_text(dec),
                "json": {"query": name, "value": _decomposition_json(dec)}}
    if name == "leq":
        flag = _eval_cd(args[0]).leq(_eval_cd(args[1]))
        return {"text": "true" if flag else "false",
                "json": {"query": name, "value": flag}}
    phi = _eval_cd(args[0]).to_phi()
    return {"text": _phi_text(phi),
            "json": {"query": "phi", "value": _phi_json(phi)}}


# -- table emitters ----------------------------------------------------------

def _row_bases(p):
    return [Basis.q(), Basis.zloc(p), Basis.zp(p), Basis.zpinf(p)]


def _column_bases(p, q):
    return [Basis.zloc(p), Basis.zp(p), Basis.zpinf(p), Basis.q(),
            Basis.zloc(q), Basis.zp(q), Basis.zpinf(q)]


_COLUMN_GROUP = {"Q": lambda p: Q, "Zp": lambda p: Zmod(p),
                 "ZpInf": lambda p: ZpInf(p), "Zloc": lambda p: Zloc([p])}


def _format_table(title, headers, labels, cells):
    widths = [max(len(h), *(len(str(row[j])) for row in cells))
              for j, h in enumerate(headers)]
    label_w = max(len(label) for label in labels)
    lines = [title,
             "  ".join([" " * label_w]
                       + [h.rjust(w) for h, w in zip(headers, widths)])]
    for label, row in zip(labels, cells):
        lines.append("  ".join(
            [label.ljust(label_w)]
            + [str(v).rjust(w) for v, w in zip(row, widths)]))
    return "\n".join(lines)


def emit_table(kind, n, m=None, p=2, q=3):
    """The fundamental-dimension table or the product-dimension table.

    Returns (text, json_object).  Rows list the four basis kinds at the
    prime p; columns run over both primes.  For `products` the rows
    carry the lower level m and the columns the higher level n.
    """
    check_prime(p)
    check_prime(q)
    if p == q:
        raise CliError(f"the table needs two distinct primes, got p=q={p}")
    if kind == "fundamental":
        if not (isinstance(n, int) and n >= 1):
            raise CliError(f"the fundamental table needs n >= 1: {n!r}")
        rows = _row_bases(p)
        cols = _column_bases(p, q)
        groups = [_COLUMN_GROUP[b.kind](b.p) for b in cols]
        labels = [f"F({b.render()}, {n})" for b in rows]
        headers = [b.render() for b in cols]
        cells = [[dim(phi_basis(rb, n), g) for g in groups] for rb in rows]
        title = f"dim_G F(G', {n}) with p={p}, q={q}"
    elif kind == "products":
        if m is None:
            raise CliError("the products table needs --m")
        if not (isinstance(n, int) and isinstance(m, int) and n >= m >= 2):
            raise CliError(f"the products table needs n >= m >= 2: "
                           f"n={n!r}, m={m!r}")
        rows = _row_bases(p)
        cols = _column_bases(p, q)
        labels = [f"F({b.render()}, {m})" for b in rows]
        headers = [f"({b.render()}, {n})" for b in cols]
        cells = [[fundamental_product_dim(cb, n, rb, m) for cb in cols]
                 for rb in rows]
        title = f"||Phi(G, {n}) [+] Phi(G', {m})|| with p={p}, q={q}"
    else:
        raise CliError(f"unknown table kind {kind!r}")
    jobj = {"table": kind, "n": n, "p": p, "q": q,
            "columns": headers,
            "rows": [{"label": label, "cells": row}
                     for label, row in zip(labels, cells)]}
    if kind == "products":
        jobj["m"] = m
    return _format_table(title, headers, labels, cells), jobj


# -- verification drivers ----------------------------------------------------

def _check_line(checks, lines, name, ok, detail):
    checks.append({"name": name, "ok": ok, "detail": detail})
    lines.append(f"  {name}: {detail}  {'ok' if ok else 'FAIL'}")


def _group_text(free_rank, orders):
    if free_rank == 0 and not orders:
        return "0"
    parts = ["Z"] * free_rank + [f"Z/{t}" for t in orders]
    return " + ".join(parts)


def _report_matches(report, free_rank, orders):
    return (report.free_rank == free_rank
            and tuple(report.orders) == tuple(orders))


def _ext_mod_p(p, coeff):
    """Ext(Z/p, coeff) as (free_rank, orders): the expected relative H^2."""
    if coeff is Z:
        return 0, (p,)
    if isinstance(coeff, Zmod):
        return (0, (p,)) if coeff.p == p else (0, ())
    return 0, ()


def _verify_mp_pair(p, coeff):
    cyl = simplicial.mapping_cylinder(simplicial.degree_map_circle(p))
    boundary = cyl.domain
    checks, lines = [], [f"mp-pair: M_{p} rel its source circle"]

    integral = simplicial.homology_of(cyl.complex, relative_to=boundary)
    got = [integral[k].render() for k in (0, 1, 2)]
    ok = (integral[0].is_zero and integral[2].is_zero
          and _report_matches(integral[1], 0, (p,)))
    _check_line(checks, lines, "H_*(M_p, dM_p; Z)",
                ok, f"{', '.join(got)} (expected 0, Z/{p}, 0)")

    rep = simplicial.cohomology_of(cyl.complex, coeff,
                                   relative_to=boundary)
    exp = _ext_mod_p(p, coeff)
    ok = _report_matches(rep[2], *exp)
    _check_line(checks, lines, f"H^2(M_p, dM_p; {coeff.render()})",
                ok, f"{rep[2].render()} (expected {_group_text(*exp)})")

    cone, xi, base = cyl.collapse()
    induced = simplicial.induced(xi, 2, Zmod(p),
                                 relative=(boundary, base),
                                 cohomology=True)
    _check_line(checks, lines, f"xi* on H^2(.; Z/{p})",
                induced.iso, induced.render())
    return checks, lines


def _verify_pontryagin(p, stages):
    built, bondings = simplicial.pontryagin_stage(p, stages)
    checks, lines = [], [f"pontryagin: stages L_1 .. L_{stages + 1}, p={p}"]
    for j, bonding in enumerate(bondings, start=1):
        rep = simplicial.induced(bonding, 2, Zmod(p), cohomology=True)
        _check_line(checks, lines, f"(q^{j + 1}_{j})* on H^2(.; Z/{p})",
                    rep.iso, rep.render())
    rational = simplicial.cohomology_of(built[-1], Q)
    _check_line(checks, lines, f"H^2(L_{stages + 1}; Q)",
                rational[2].is_zero, rational[2].render() + " (expected 0)")
    return checks, lines


def _verify_ew(p, n):
    model = simplicial.full_simplex(n + 1)
    ew, inclusion = simplicial.ew_skeleton(model, Zmod(p), n)
    checks, lines = [], [f"ew: EW skeleton of the {n + 1}-simplex, "
                         f"group Z/{p}, n={n}"]
    integral = chains.homology(ew)
    ok = _report_matches(integral[n], 0, (p,))
    _check_line(checks, lines, f"H_{n}(EW; Z)",
                ok, f"{integral[n].render()} (expected Z/{p})")
    rep = chains.induced_map(inclusion, n, Zmod(p))
    _check_line(checks, lines,
                f"skeleton inclusion on H_{n}(.; Z/{p})",
                rep.injective, rep.render())
    return checks, lines


def _verify_join(p, q):
    left = chains.moore_space(p, 1)
    right = chains.moore_space(q, 1)
    rep = chains.join_homology(left, right)
    g = gcd(p, q)
    expected = {i: ((0, (g,)) if g > 1 and i in (3, 4) else (0, ()))
                for i in range(max(rep.degrees(), default=4) + 1)}
    checks, lines = [], [f"join: M(Z/{p}, 1) * M(Z/{q}, 1)"]
    for i in sorted(expected):
        ok = _report_matches(rep[i], *expected[i])
        _check_line(checks, lines, f"H~_{i}",
                    ok, f"{rep[i].render()} "
                        f"(expected {_group_text(*expected[i])})")
    return checks, lines


def verify(target, p=2, q=3, n=2, stages=1, coeff=Q):
    """Run one verification driver; (ok, text, json_object)."""
    check_prime(p)
    if target == "mp-pair":
        checks, lines = _verify_mp_pair(p, coeff)
    elif target == "pontryagin":
        checks, lines = _verify_pontryagin(p, stages)
    elif target == "ew":
        checks, lines = _verify_ew(p, n)
    elif target == "join":
        check_prime(q)
        checks, lines = _verify_join(p, q)
    else:
        raise CliError(f"unknown verification target {target!r}")
    ok = all(c["ok"] for c in checks)
    lines.append("pass" if ok else "FAIL")
    jobj = {"target": target, "ok": ok, "checks": checks}
    return ok, "\n".join(lines), jobj


# -- subcommand plumbing -----------------------------------------------------

def _parse_prime_csv(text):
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            out.append(check_prime(int(piece)))
        except ValueError as exc:
            raise CliError(str(exc)) from exc
    if not out:
        raise CliError(f"no primes in {text!r}")
    return out


def _parse_coeff(text):
    grp = parse_group(text)
    if grp is Z or grp is Q or isinstance(grp, (Zmod, ZpInf)):
        return grp
    raise CliError(f"unsupported coefficient group: {text!r}")


def _cmd_eval(args):
    result = evaluate(parse(args.expr))
    return 0, result["text"], result["json"]


def _cmd_table(args):
    text, jobj = emit_table(args.kind, args.n, args.m, args.p, args.q)
    return 0, text, jobj


def _cmd_decompose(args):
    dec = decompose(_eval_cd(parse_cdexpr(args.expr)))
    return 0, _decomposition_text(dec), {
        "query": "decompose", "value": _decomposition_json(dec)}


def _cmd_sigma(args):
    fam = sigma(parse_group(args.group))
    return 0, fam.render(), {"query": "sigma", "value": _family_json(fam)}


def _cmd_verify(args):
    ok, text, jobj = verify(args.target, p=args.p, q=args.q, n=args.n,
                            stages=args.stages,
                            coeff=_parse_coeff(args.coeff))
    return (0 if ok else 1), text, jobj


def _cmd_check_laws(args):
    primes = _parse_prime_csv(args.primes)
    if not (isinstance(args.max, int) and args.max >= 1):
        raise CliError(f"--max needs a positive bound: {args.max!r}")
    universe = Universe(primes, args.max)
    reports = check_laws(universe, laws=args.laws)
    ok = all(r.ok for r in reports)
    text = render_reports(reports) + ("suite: pass" if ok else "suite: FAIL")
    jobj = {"universe": {"primes": primes, "bound": args.max}, "ok": ok,
            "reports": [r.to_json() for r in reports]}
    return (0 if ok else 1), text, jobj


def _build_argparser():
    ap = argparse.ArgumentParser(
        prog="bockstein",
        description="Exact cohomological-dimension calculus with finite "
                    "homology verifiers.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_json(sp):
        sp.add_argument("--json", action="store_true",
                        help="emit JSON instead of text")
        return sp

    sp = with_json(sub.add_parser("eval", help="evaluate a query"))
    sp.add_argument("expr")
    sp.set_defaults(fn=_cmd_eval)

    sp = with_json(sub.add_parser("table", help="emit a golden table"))
    sp.add_argument("kind", choices=("fundamental", "products"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int)
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--q", type=int, default=3)
    sp.set_defaults(fn=_cmd_table)

    sp = with_json(sub.add_parser("decompose",
                                  help="wedge decomposition of a cd-type"))
    sp.add_argument("expr")
    sp.set_defaults(fn=_cmd_decompose)

    sp = with_json(sub.add_parser("sigma",
                                  help="Bockstein family of a group"))
    sp.add_argument("group")
    sp.set_defaults(fn=_cmd_sigma)

    sp = with_json(sub.add_parser("verify",
                                  help="run a homology verification"))
    sp.add_argument("target",
                    choices=("mp-pair", "pontryagin", "ew", "join"))
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--q", type=int, default=3)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--stages", type=int, default=1)
    sp.add_argument("--coeff", default="Q")
    sp.set_defaults(fn=_cmd_verify)

    sp = with_json(sub.add_parser("check-laws",
                                  help="run the algebra-law suite"))
    sp.add_argument("--primes", default="2,3")
    sp.add_argument("--max", type=int, default=3)
    sp.add_argument("--laws", default="all")
    sp.set_defaults(fn=_cmd_check_laws)
    return ap


def main(argv=None):
    args = _build_argparser().parse_args(argv)
    try:
        code, text, jobj = args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, UndefinedArithmetic) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(jobj, sort_keys=True) if args.json else text)
    return code


if __name__ == "__main__":
    sys.exit(main())

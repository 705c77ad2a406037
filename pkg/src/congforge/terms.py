"""Lattice terms, identities, quasi-identities: parsing, printing, checking.

Concrete syntax: `+` is join, `*` is meet and binds tighter, `=` separates
the sides of an equation, `<=` writes an inequation (checked as s+t = t),
`&`-separated equations followed by `->` form a quasi-identity.
Identifiers match [A-Za-z][A-Za-z0-9_']*, so primed variables like x0'
are single tokens.

Checking is exhaustive by default and vectorised over blocks of
assignments; above the evaluation budget the caller must switch to
sampled mode with an explicit seed so that runs stay reproducible.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

import numpy as np


class TermSyntaxError(Exception):
    """Parse failure; offset is the 1-based byte position in the input."""

    def __init__(self, offset, expected, found):
        self.offset = offset
        self.expected = tuple(expected)
        self.found = found
        super().__init__(
            "syntax error at offset %d: expected %s, found %s"
            % (offset, " or ".join(expected), found)
        )


class UnboundVariableError(Exception):
    def __init__(self, name):
        self.name = name
        super().__init__("unbound variable %r" % name)


class BudgetExceededError(Exception):
    """Exhaustive check would exceed the evaluation budget; use sampled mode."""


class InvalidNError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"


Term = Var | Join | Meet


@dataclass(frozen=True)
class Identity:
    """An equation s = t, or an inequation s <= t recorded by kind."""

    lhs: Term
    rhs: Term
    kind: str = "eq"  # "eq" | "le"

    def __post_init__(self):
        if self.kind not in ("eq", "le"):
            raise ValueError("kind must be 'eq' or 'le'")

    def variables(self):
        return variables(self.lhs) | variables(self.rhs)


@dataclass(frozen=True)
class QuasiIdentity:
    """premise_1 & ... & premise_k -> conclusion (k may be zero)."""

    premises: tuple[Identity, ...]
    conclusion: Identity

    def variables(self):
        out = self.conclusion.variables()
        for p in self.premises:
            out |= p.variables()
        return out


def variables(term):
    if isinstance(term, Var):
        return {term.name}
    return variables(term.left) | variables(term.right)


def node_count(term):
    if isinstance(term, Var):
        return 1
    return 1 + node_count(term.left) + node_count(term.right)


def substitute(term, mapping):
    """Replace variables by terms; variables absent from mapping stay."""
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    cls = type(term)
    return cls(substitute(term.left, mapping), substitute(term.right, mapping))


# -- printing ---------------------------------------------------------------


def _term_str(term, parent_prec, right_child, tight):
    if isinstance(term, Var):
        return term.name
    prec = 1 if isinstance(term, Join) else 2
    # the grammar is left-associative, so a right child at equal
    # precedence needs parentheses to round-trip
    parens = parent_prec > prec or (parent_prec == prec and right_child)
    inner_tight = tight or parens or isinstance(term, Meet)
    if isinstance(term, Join):
        sep = "+" if inner_tight else " + "
    else:
        sep = "*"
    s = (
        _term_str(term.left, prec, False, inner_tight)
        + sep
        + _term_str(term.right, prec, True, inner_tight)
    )
    return "(" + s + ")" if parens else s


def to_str(obj):
    """Canonical concrete syntax; parse(to_str(x)) == x."""
    if isinstance(obj, (Var, Join, Meet)):
        return _term_str(obj, 0, False, False)
    if isinstance(obj, Identity):
        op = " = " if obj.kind == "eq" else " <= "
        return to_str(obj.lhs) + op + to_str(obj.rhs)
    if isinstance(obj, QuasiIdentity):
        if not obj.premises:
            # premise-free implications degenerate to their conclusion
            return to_str(obj.conclusion)
        left = " & ".join(to_str(p) for p in obj.premises)
        return left + " -> " + to_str(obj.conclusion)
    raise TypeError("cannot print %r" % (obj,))


# -- parsing ----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9_']*)|(<=|->|[+*()=&]))")


def _lex(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise TermSyntaxError(at + 1, ("a token",), repr(stripped[0]))
        if m.group(1):
            tokens.append(("IDENT", m.group(1), m.start(1) + 1))
        else:
            tokens.append((m.group(2), m.group(2), m.start(2) + 1))
        pos = m.end()
    tokens.append(("END", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _lex(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise TermSyntaxError(tok[2], (repr(kind),), repr(tok[1]) if tok[1] else "end of input")
        return tok

    def fail(self, expected):
        tok = self.tokens[self.i]
        raise TermSyntaxError(tok[2], expected, repr(tok[1]) if tok[1] else "end of input")

    def atom(self):
        kind = self.peek()
        if kind == "IDENT":
            return Var(self.next()[1])
        if kind == "(":
            self.next()
            t = self.term()
            self.expect(")")
            return t
        self.fail(("IDENT", "'('"))

    def prod(self):
        t = self.atom()
        while self.peek() == "*":
            self.next()
            t = Meet(t, self.atom())
        return t

    def term(self):
        t = self.prod()
        while self.peek() == "+":
            self.next()
            t = Join(t, self.prod())
        return t

    def identity(self):
        lhs = self.term()
        kind = self.peek()
        if kind == "=":
            self.next()
            return Identity(lhs, self.term(), "eq")
        if kind == "<=":
            self.next()
            return Identity(lhs, self.term(), "le")
        self.fail(("'='", "'<='"))


def parse(text):
    """Parse a term, an identity, or a quasi-identity, per what appears."""
    p = _Parser(text)
    lhs = p.term()
    kind = p.peek()
    if kind == "END":
        return lhs
    if kind not in ("=", "<="):
        p.fail(("'='", "'<='", "'+'", "'*'", "end of input"))
    p.next()
    first = Identity(lhs, p.term(), "eq" if kind == "=" else "le")
    if p.peek() == "END":
        return first
    premises = [first]
    while p.peek() == "&":
        p.next()
        premises.append(p.identity())
    p.expect("->")
    conclusion = p.identity()
    p.expect("END")
    return QuasiIdentity(tuple(premises), conclusion)


# -- fixed and parametric formulas -------------------------------------------


def _fold_join(terms):
    out = terms[0]
    for t in terms[1:]:
        out = Join(out, t)
    return out


def _fold_meet(terms):
    out = terms[0]
    for t in terms[1:]:
        out = Meet(out, t)
    return out


def _dn_parts(n):
    if n < 3:
        raise InvalidNError("the family is defined for n >= 3, got %d" % n)
    x = [Var("x%d" % i) for i in range(n)]
    xp = [Var("x%d'" % i) for i in range(n)]

    def y(i):
        j = (i + 1) % n
        return Meet(Join(x[i], x[j]), Join(xp[i], xp[j]))

    tail_meet = _fold_meet([Join(x[i], xp[i]) for i in range(1, n)])
    cross = Join(x[1], Meet(Join(xp[0], xp[1]), _fold_join([y(i) for i in range(1, n)])))
    return x, xp, tail_meet, cross


def generate_dn(n):
    """The n-th higher Arguesian inequality in 2n variables, cyclic form."""
    x, xp, tail_meet, cross = _dn_parts(n)
    lhs = Meet(x[0], Join(xp[0], tail_meet))
    return Identity(lhs, cross, "le")


def generate_dn_star(n):
    """The companion inequality equivalent to generate_dn(n) on modular lattices."""
    x, xp, tail_meet, cross = _dn_parts(n)
    lhs = Meet(Join(x[0], xp[0]), tail_meet)
    rhs = Join(xp[0], Meet(x[0], cross))
    return Identity(lhs, rhs, "le")


def generate_modular():
    """Equational form of the modular law: x*(y + x*z) = x*y + x*z."""
    x, y, z = Var("x"), Var("y"), Var("z")
    return Identity(Meet(x, Join(y, Meet(x, z))), Join(Meet(x, y), Meet(x, z)), "eq")


def generate_2distributive():
    """u*(x+y+z) = u*(x+y) + u*(x+z) + u*(y+z)."""
    u, x, y, z = Var("u"), Var("x"), Var("y"), Var("z")
    lhs = Meet(u, Join(Join(x, y), z))
    rhs = Join(
        Join(Meet(u, Join(x, y)), Meet(u, Join(x, z))),
        Meet(u, Join(y, z)),
    )
    return Identity(lhs, rhs, "eq")


def generate_sd(side):
    """The meet (or join) semidistributivity quasi-identity."""
    x, y, z = Var("x"), Var("y"), Var("z")
    if side == "meet":
        prem = Identity(Meet(x, y), Meet(x, z), "eq")
        conc = Identity(Meet(x, y), Meet(x, Join(y, z)), "eq")
    elif side == "join":
        prem = Identity(Join(x, y), Join(x, z), "eq")
        conc = Identity(Join(x, y), Join(x, Meet(y, z)), "eq")
    else:
        raise ValueError("side must be 'meet' or 'join'")
    return QuasiIdentity((prem,), conc)


# -- evaluation --------------------------------------------------------------


def evaluate(term, lat, assignment):
    """Value of a term in lat under a variable->element assignment."""
    if isinstance(term, Var):
        try:
            return int(assignment[term.name])
        except KeyError:
            raise UnboundVariableError(term.name) from None
    left = evaluate(term.left, lat, assignment)
    right = evaluate(term.right, lat, assignment)
    table = lat.join if isinstance(term, Join) else lat.meet
    return int(table[left, right])


def _count_subterms(term, counts):
    counts[term] += 1
    if not isinstance(term, Var):
        _count_subterms(term.left, counts)
        _count_subterms(term.right, counts)


class VectorEvaluator:
    """Evaluates terms over numpy arrays of assignments, one value per row.

    Subterms occurring more than once (structurally) across the batch of
    terms handed to the constructor are computed once per block and
    cached; everything else streams, keeping memory proportional to the
    expression depth rather than its size.
    """

    def __init__(self, lat, terms):
        self.lat = lat
        self.size = lat.size
        self.join_flat = np.ascontiguousarray(lat.join.ravel())
        self.meet_flat = np.ascontiguousarray(lat.meet.ravel())
        counts = Counter()
        for t in terms:
            _count_subterms(t, counts)
        self.shared = {t for t, c in counts.items() if c > 1 and not isinstance(t, Var)}

    def run(self, term, env, cache):
        hit = cache.get(term)
        if hit is not None:
            return hit
        if isinstance(term, Var):
            try:
                return env[term.name]
            except KeyError:
                raise UnboundVariableError(term.name) from None
        left = self.run(term.left, env, cache)
        right = self.run(term.right, env, cache)
        table = self.join_flat if isinstance(term, Join) else self.meet_flat
        out = table[left * self.size + right]
        if term in self.shared:
            cache[term] = out
        return out

    def truth(self, identity, env, cache):
        """Boolean array: does the (in)equation hold at each assignment."""
        lhs = self.run(identity.lhs, env, cache)
        rhs = self.run(identity.rhs, env, cache)
        if identity.kind == "eq":
            return lhs == rhs
        return self.join_flat[lhs * self.size + rhs] == rhs


@dataclass
class Verdict:
    status: str  # "holds" | "fails" | "sampled_pass"
    assignment: dict | None
    checked: int

    @property
    def holds(self):
        return self.status in ("holds", "sampled_pass")


DEFAULT_BUDGET = 10**8


def _formula_parts(phi):
    if isinstance(phi, Identity):
        return (), phi
    if isinstance(phi, QuasiIdentity):
        return phi.premises, phi.conclusion
    raise TypeError("holds() expects an Identity or QuasiIdentity")


def holds(lat, phi, mode="exhaustive", samples=None, seed=None, budget=DEFAULT_BUDGET,
          block=1 << 18):
    """Check an identity or quasi-identity in a finite lattice.

    Exhaustive mode enumerates all size**k assignments (variables in
    lexicographic name order, last variable fastest) and is decisive;
    the first counterexample in enumeration order is returned.  Sampled
    mode draws `samples` seeded random assignments and can only report
    sampled_pass or fails.  Exhaustive cost is counted in term-node
    evaluations and refuses to exceed `budget` (pass budget=None to lift).
    """
    premises, conclusion = _formula_parts(phi)
    names = sorted(phi.variables() if hasattr(phi, "variables") else variables(phi))
    k = len(names)
    n = lat.size
    all_terms = [conclusion.lhs, conclusion.rhs]
    for p in premises:
        all_terms += [p.lhs, p.rhs]
    nodes = sum(node_count(t) for t in all_terms)
    ev = VectorEvaluator(lat, all_terms)

    def fails_at(env, cache):
        ok = ev.truth(conclusion, env, cache)
        if premises:
            applicable = np.ones_like(ok)
            for p in premises:
                applicable &= ev.truth(p, env, cache)
            return applicable & ~ok
        return ~ok

    if mode == "exhaustive":
        total = n**k
        if budget is not None and total * nodes > budget:
            raise BudgetExceededError(
                "exhaustive check needs %d term evaluations, budget is %d; "
                "use sampled mode with an explicit seed" % (total * nodes, budget)
            )
        shape = (n,) * k
        for lo in range(0, total, block):
            hi = min(total, lo + block)
            idx = np.arange(lo, hi, dtype=np.int64)
            cols = np.unravel_index(idx, shape) if k else ()
            env = dict(zip(names, cols))
            bad = fails_at(env, {})
            where = np.flatnonzero(bad)
            if where.size:
                j = int(where[0])
                return Verdict("fails", {v: int(env[v][j]) for v in names}, lo + j + 1)
        return Verdict("holds", None, total)

    if mode == "sampled":
        if samples is None or seed is None:
            raise ValueError("sampled mode needs samples and an explicit seed")
        rng = np.random.default_rng(seed)
        done = 0
        while done < samples:
            m = min(block, samples - done)
            env = {v: rng.integers(0, n, size=m, dtype=np.int64) for v in names}
            bad = fails_at(env, {})
            where = np.flatnonzero(bad)
            if where.size:
                j = int(where[0])
                return Verdict("fails", {v: int(env[v][j]) for v in names}, done + j + 1)
            done += m
        return Verdict("sampled_pass", None, done)

    raise ValueError("mode must be 'exhaustive' or 'sampled'")


def builtin_formula(name, n=None):
    """Formula registry used by the command-line surface."""
    if name == "modular":
        return generate_modular()
    if name == "2dist":
        return generate_2distributive()
    if name == "sd-meet":
        return generate_sd("meet")
    if name == "sd-join":
        return generate_sd("join")
    if name == "dn":
        if n is None:
            raise ValueError("builtin 'dn' needs --n")
        return generate_dn(n)
    if name == "dn-star":
        if n is None:
            raise ValueError("builtin 'dn-star' needs --n")
        return generate_dn_star(n)
    if name == "arguesian-d3":
        return generate_dn_star(3)
    raise ValueError("unknown builtin %r" % name)

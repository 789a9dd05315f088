"""Directed rewriting over combinator terms, with step traces.

Matching is syntactic first-order, modulo two things only: sequential
composition is normalized to right-nested chains before matching, and type
annotations are transparent (they are re-established by typechecking the
rewritten term).  A rule's pattern chain may match a prefix window of a
longer chain; the unmatched tail is kept.  Every applied step is checked to
preserve the term's type, so traces are well-typed throughout.

Soundness, not confluence, is the contract: a rule ships only if all of its
recorded instantiations evaluate equal (up to the rule's declared omega
power), and ``simplify`` guarantees every emitted step is semantically
sound.  Termination of ``simplify`` is by budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal, Optional, Sequence

from .lang import (
    Ann,
    Combinator,
    MetaVar,
    Prim,
    ProdC,
    Seq,
    SqrtPiError,
    SumC,
    TypeCheckError,
    ValueType,
    parse,
    pretty,
    seq,
    strip_ann,
    typecheck,
)
from .semantics import ExactMatrix, Verdict, equal_matrices, evaluate


class NoMatch(SqrtPiError):
    pass


class PathInvalid(SqrtPiError):
    pass


# --- term plumbing ----------------------------------------------------------


def flatten_seq(t: Combinator) -> list[Combinator]:
    if isinstance(t, Seq):
        return flatten_seq(t.first) + flatten_seq(t.second)
    return [t]


def normalize(t: Combinator) -> Combinator:
    """Right-nest all sequential chains, recursively (Ann is a barrier)."""
    if isinstance(t, Seq):
        parts = [normalize(p) for p in flatten_seq(t)]
        return seq(*parts)
    if isinstance(t, SumC):
        return SumC(normalize(t.left), normalize(t.right))
    if isinstance(t, ProdC):
        return ProdC(normalize(t.left), normalize(t.right))
    if isinstance(t, Ann):
        return Ann(normalize(t.term), t.src, t.tgt)
    return t


def _children(t: Combinator) -> tuple[Combinator, ...]:
    if isinstance(t, Seq):
        return (t.first, t.second)
    if isinstance(t, (SumC, ProdC)):
        return (t.left, t.right)
    if isinstance(t, Ann):
        return (t.term,)
    return ()


def subterm(t: Combinator, path: Sequence[int]) -> Combinator:
    for i in path:
        kids = _children(t)
        if not 0 <= i < len(kids):
            raise PathInvalid(f"no child {i} at `{pretty(t)}`")
        t = kids[i]
    return t


def replace_at(t: Combinator, path: Sequence[int], new: Combinator) -> Combinator:
    if not path:
        return new
    i, rest = path[0], path[1:]
    kids = _children(t)
    if not 0 <= i < len(kids):
        raise PathInvalid(f"no child {i} at `{pretty(t)}`")
    k = replace_at(kids[i], rest, new)
    if isinstance(t, Seq):
        return Seq(k, t.second) if i == 0 else Seq(t.first, k)
    if isinstance(t, SumC):
        return SumC(k, t.right) if i == 0 else SumC(t.left, k)
    if isinstance(t, ProdC):
        return ProdC(k, t.right) if i == 0 else ProdC(t.left, k)
    return Ann(k, t.src, t.tgt)


def iter_paths(t: Combinator) -> list[tuple[int, ...]]:
    """All subterm addresses, preorder (shallowest first at each branch)."""
    out: list[tuple[int, ...]] = []

    def walk(node: Combinator, path: tuple[int, ...]) -> None:
        out.append(path)
        for i, kid in enumerate(_children(node)):
            walk(kid, path + (i,))

    walk(t, ())
    return out


def term_size(t: Combinator) -> int:
    """Node count; annotations are free so they never block a reduction."""
    if isinstance(t, Ann):
        return term_size(t.term)
    kids = _children(t)
    return 1 + sum(term_size(k) for k in kids)


# --- matching / substitution ------------------------------------------------


def match(pat: Combinator, term: Combinator, binding: Optional[dict] = None):
    """First-order match of a pattern against a term (annotations are
    transparent on both sides).  Returns the binding dict or None.

    Inside a sequential chain, a trailing metavariable absorbs the rest of
    the chain.
    """
    b = {} if binding is None else binding
    return b if _match(pat, term, b) else None


def _match(pat: Combinator, term: Combinator, b: dict) -> bool:
    if isinstance(pat, MetaVar):
        prev = b.get(pat.name)
        if prev is None:
            b[pat.name] = term
            return True
        return strip_ann(prev) == strip_ann(term)
    if isinstance(pat, Ann):
        return _match(pat.term, term, b)
    if isinstance(term, Ann):
        return _match(pat, term.term, b)
    if isinstance(pat, Prim):
        return isinstance(term, Prim) and pat.name == term.name
    if isinstance(pat, Seq):
        if not isinstance(term, Seq):
            return False
        ps, ts = flatten_seq(pat), flatten_seq(term)
        if len(ps) == len(ts):
            return all(_match(p, t, b) for p, t in zip(ps, ts))
        if len(ps) < len(ts) and isinstance(ps[-1], MetaVar):
            head = len(ps) - 1
            if not all(_match(p, t, b) for p, t in zip(ps[:head], ts[:head])):
                return False
            return _match(ps[-1], seq(*ts[head:]), b)
        return False
    if isinstance(pat, SumC):
        return (
            isinstance(term, SumC)
            and _match(pat.left, term.left, b)
            and _match(pat.right, term.right, b)
        )
    if isinstance(pat, ProdC):
        return (
            isinstance(term, ProdC)
            and _match(pat.left, term.left, b)
            and _match(pat.right, term.right, b)
        )
    raise TypeError(f"bad pattern node {pat!r}")


def subst(pat: Combinator, b: dict) -> Combinator:
    if isinstance(pat, MetaVar):
        try:
            return b[pat.name]
        except KeyError:
            raise NoMatch(f"unbound pattern variable ?{pat.name}") from None
    if isinstance(pat, Seq):
        return Seq(subst(pat.first, b), subst(pat.second, b))
    if isinstance(pat, SumC):
        return SumC(subst(pat.left, b), subst(pat.right, b))
    if isinstance(pat, ProdC):
        return ProdC(subst(pat.left, b), subst(pat.right, b))
    if isinstance(pat, Ann):
        return Ann(subst(pat.term, b), pat.src, pat.tgt)
    return pat


# --- rules -------------------------------------------------------------------


@dataclass(frozen=True)
class SideCondition:
    """Named checkable predicate over a rule's bindings."""

    name: str
    vars: tuple[str, ...]
    fn: Callable[..., bool] = field(compare=False)

    def holds(self, b: dict) -> bool:
        try:
            args = [b[v] for v in self.vars]
        except KeyError:
            return False
        try:
            return self.fn(*args)
        except SqrtPiError:
            return False


def _is_syntactic_inverse(a: Combinator, c: Combinator) -> bool:
    from .lang import invert

    return strip_ann(invert(a)) == strip_ann(c)


def _is_involutive(f: Combinator) -> bool:
    m = evaluate(seq(f, f))
    return m.is_identity()


INVERSE_PAIR = SideCondition("inverse_pair", ("c", "ci"), _is_syntactic_inverse)
INVOLUTIVE = SideCondition("involutive", ("f",), _is_involutive)

SIDE_CONDITIONS = {"inverse_pair": INVERSE_PAIR, "involutive": INVOLUTIVE}


@dataclass(frozen=True)
class RewriteRule:
    """A named oriented equation between combinator patterns.

    ``phase`` is the declared global phase: eval(lhs) = w^phase * eval(rhs)
    at every instantiation.  ``checks`` are the concrete (lhs, rhs) pairs the
    rule is validated on before it ships.
    """

    name: str
    family: str
    lhs: Combinator
    rhs: Combinator
    phase: int = 0
    bidirectional: bool = True
    oriented: bool = False
    normalizing: bool = False
    side: Optional[SideCondition] = None
    checks: tuple[tuple[Combinator, Combinator], ...] = ()
    qubits: Optional[int] = None


# --- rule application ---------------------------------------------------------


def _rewrite_node(node: Combinator, lhs: Combinator, rhs: Combinator,
                  side: Optional[SideCondition]) -> Optional[Combinator]:
    """Rewrite one addressed node, window-matching sequential chains.

    Returns None when the pattern does not match (callers turn that into
    NoMatch where appropriate); ``lhs`` must already be normalized.
    """
    lhs_n, node_n = lhs, node
    if isinstance(lhs_n, Seq) and isinstance(node_n, Seq):
        ps, ts = flatten_seq(lhs_n), flatten_seq(node_n)
        if len(ps) <= len(ts):
            b: dict = {}
            window_ok = all(_match(p, t, b) for p, t in zip(ps, ts))
            if window_ok and (side is None or side.holds(b)):
                out = subst(rhs, b)
                rest = ts[len(ps):]
                return seq(out, *rest) if rest else out
        # fall through to whole-node matching (covers trailing-metavar
        # absorption, which the window loop above does not attempt)
    b2 = match(lhs_n, node_n)
    if b2 is None or (side is not None and not side.holds(b2)):
        return None
    return subst(rhs, b2)


def apply_rule(
    term: Combinator,
    rule: RewriteRule,
    path: Sequence[int],
    direction: Literal["forward", "backward"] = "forward",
    expected: Optional[tuple[ValueType, ValueType]] = None,
) -> Combinator:
    """Apply a rule at a subterm address of the (normalized) term.

    The input is normalized (right-nested ``;``) before the path is resolved,
    and the result is checked to typecheck at the input's type.
    """
    lhs, rhs = (rule.lhs, rule.rhs) if direction == "forward" else (rule.rhs, rule.lhs)
    base = normalize(term)
    typed = typecheck(base, expected)
    node = subterm(base, path)
    new_node = _rewrite_node(node, normalize(lhs), rhs, rule.side)
    if new_node is None:
        raise NoMatch(f"rule {rule.name} does not match at path {tuple(path)}")
    result = normalize(replace_at(base, path, new_node))
    try:
        typecheck(result, (typed.src, typed.tgt))
    except TypeCheckError as e:
        raise NoMatch(f"rewrite would break typing: {e}") from e
    return result


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    path: tuple[int, ...]
    direction: Literal["forward", "backward"]
    phase: int  # signed contribution to the trace's omega power
    term_after: Combinator

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "path": list(self.path),
            "direction": self.direction,
            "phase": self.phase,
            "term_after": pretty(self.term_after),
        }


@dataclass(frozen=True)
class RewriteTrace:
    start: Combinator
    steps: tuple[RewriteStep, ...]

    @property
    def final(self) -> Combinator:
        return self.steps[-1].term_after if self.steps else normalize(self.start)

    @property
    def omega_power(self) -> int:
        return sum(s.phase for s in self.steps) % 8

    def to_json(self) -> dict:
        return {
            "start": pretty(self.start),
            "omega_power": self.omega_power,
            "steps": [s.to_json() for s in self.steps],
        }


def replay(
    term: Combinator,
    script: Sequence[tuple[str, Sequence[int], str]],
    rules: Optional[dict[str, RewriteRule]] = None,
    expected: Optional[tuple[ValueType, ValueType]] = None,
) -> RewriteTrace:
    """Execute a fixed derivation script: (rule name, path, direction) steps."""
    if rules is None:
        rules = rules_by_name()
    t = normalize(term)
    steps: list[RewriteStep] = []
    for name, path, direction in script:
        rule = rules[name]
        t = apply_rule(t, rule, tuple(path), direction, expected)
        signed = rule.phase if direction == "forward" else -rule.phase
        steps.append(RewriteStep(name, tuple(path), direction, signed % 8, t))
    return RewriteTrace(term, tuple(steps))


def simplify(
    term: Combinator,
    budget: int = 128,
    expected: Optional[tuple[ValueType, ValueType]] = None,
) -> tuple[Combinator, RewriteTrace]:
    """Greedy best-effort simplification with the oriented catalog rules.

    Size-decreasing rules are preferred; size-preserving "normalizing" rules
    (the bifunctoriality laws) apply only to terms not seen before, and the
    step budget bounds the run.  Every step is recorded; the endpoints agree
    up to the trace's omega power.
    """
    decreasing = [(r, normalize(r.lhs)) for r in rule_db()
                  if r.oriented and not r.normalizing]
    normalizing = [(r, normalize(r.lhs)) for r in rule_db()
                   if r.oriented and r.normalizing]
    t = normalize(term)
    typed = typecheck(t, expected)
    ty = (typed.src, typed.tgt)
    steps: list[RewriteStep] = []
    seen = {strip_ann(t)}

    def try_rules(group, require_smaller: bool):
        nonlocal t
        size_now = term_size(t)
        for path in iter_paths(t):
            node = subterm(t, path)
            for rule, lhs_n in group:
                new_node = _rewrite_node(node, lhs_n, rule.rhs, rule.side)
                if new_node is None:
                    continue
                t2 = normalize(replace_at(t, path, new_node))
                if require_smaller and term_size(t2) >= size_now:
                    continue
                key = strip_ann(t2)
                if not require_smaller and key in seen:
                    continue
                try:
                    typecheck(t2, ty)
                except TypeCheckError:
                    continue
                seen.add(key)
                steps.append(
                    RewriteStep(rule.name, path, "forward", rule.phase % 8, t2)
                )
                t = t2
                return True
        return False

    while len(steps) < budget:
        if try_rules(decreasing, True):
            continue
        if try_rules(normalizing, False):
            continue
        break
    return t, RewriteTrace(term, tuple(steps))


def check_equiv(
    t1: Combinator,
    t2: Combinator,
    phase_mode: Literal["strict", "up_to_omega_power"] = "strict",
    expected: Optional[tuple[ValueType, ValueType]] = None,
) -> Verdict:
    """Decide semantic equivalence by exact evaluation."""
    a = typecheck(t1, expected)
    b = typecheck(t2, (a.src, a.tgt))
    return equal_matrices(evaluate(a), evaluate(b), phase_mode)


# --- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class InstanceResult:
    index: int
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class RuleReport:
    rule: str
    family: str
    results: tuple[InstanceResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results)


def validate_rule(
    rule: RewriteRule,
    instances: Optional[Sequence[tuple[Combinator, Combinator]]] = None,
) -> RuleReport:
    """Exact matrix comparison of every instantiation; reports, never raises."""
    pairs = tuple(instances) if instances is not None else rule.checks
    results = []
    for i, (lhs, rhs) in enumerate(pairs):
        try:
            tl = typecheck(lhs)
            tr = typecheck(rhs, (tl.src, tl.tgt))
            ml = evaluate(tl)
            mr = evaluate(tr).times_omega_pow(rule.phase)
            if ml == mr:
                results.append(InstanceResult(i, True))
            else:
                results.append(InstanceResult(i, False, _first_diff(ml, mr)))
        except SqrtPiError as e:
            results.append(InstanceResult(i, False, f"{type(e).__name__}: {e}"))
    return RuleReport(rule.name, rule.family, tuple(results))


def _first_diff(a: ExactMatrix, b: ExactMatrix) -> str:
    for i in range(a.rows):
        for j in range(a.cols):
            if a[i, j] != b[i, j]:
                return f"entry ({i},{j}): {a[i, j]} != {b[i, j]}"
    return "matrices differ in shape"


# --- catalog ------------------------------------------------------------------

CATALOG_VERSION = "sqrtpi-rules 1"


def rule_db() -> tuple[RewriteRule, ...]:
    from .rules import build_rules

    return build_rules()


def rules_by_name() -> dict[str, RewriteRule]:
    return {r.name: r for r in rule_db()}


def catalog_text(rules: Optional[Sequence[RewriteRule]] = None) -> str:
    """Serialize rules to the versioned text catalog format."""
    if rules is None:
        rules = rule_db()
    out = [CATALOG_VERSION, ""]
    for r in rules:
        out.append(f"rule {r.name}")
        out.append(f"family {r.family}")
        if r.qubits is not None:
            out.append(f"qubits {r.qubits}")
        out.append(f"phase {r.phase}")
        flags = []
        if r.bidirectional:
            flags.append("bidirectional")
        if r.oriented:
            flags.append("oriented")
        if r.normalizing:
            flags.append("normalizing")
        if flags:
            out.append("flags " + " ".join(flags))
        if r.side is not None:
            out.append(f"side {r.side.name} " + " ".join(r.side.vars))
        out.append(f"lhs {pretty(r.lhs)}")
        out.append(f"rhs {pretty(r.rhs)}")
        for lhs, rhs in r.checks:
            out.append(f"check {pretty(lhs)} == {pretty(rhs)}")
        out.append("end")
        out.append("")
    return "\n".join(out)


class CatalogError(SqrtPiError):
    pass


def _parse_check(text: str) -> tuple[Combinator, Combinator]:
    left, sep, right = text.partition("==")
    if not sep:
        raise CatalogError(f"check line needs `==`: {text!r}")
    return (
        parse(left, allow_metavars=True),
        parse(right, allow_metavars=True),
    )


def load_catalog(text: str) -> tuple[RewriteRule, ...]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != CATALOG_VERSION:
        raise CatalogError(
            f"catalog must start with {CATALOG_VERSION!r}"
        )
    rules: list[RewriteRule] = []
    cur: Optional[dict] = None
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if key == "rule":
                if cur is not None:
                    raise CatalogError("nested rule block")
                cur = {"name": rest, "checks": [], "flags": set(), "phase": 0,
                       "family": "?", "qubits": None, "side": None}
            elif cur is None:
                raise CatalogError(f"{key!r} outside a rule block")
            elif key == "family":
                cur["family"] = rest
            elif key == "qubits":
                cur["qubits"] = int(rest)
            elif key == "phase":
                cur["phase"] = int(rest)
            elif key == "flags":
                cur["flags"] = set(rest.split())
            elif key == "side":
                parts = rest.split()
                name, varnames = parts[0], tuple(parts[1:])
                if name not in SIDE_CONDITIONS:
                    raise CatalogError(f"unknown side condition {name!r}")
                base = SIDE_CONDITIONS[name]
                cur["side"] = SideCondition(name, varnames or base.vars, base.fn)
            elif key == "lhs":
                cur["lhs"] = parse(rest, allow_metavars=True)
            elif key == "rhs":
                cur["rhs"] = parse(rest, allow_metavars=True)
            elif key == "check":
                cur["checks"].append(_parse_check(rest))
            elif key == "end":
                flags = cur.pop("flags")
                rules.append(
                    RewriteRule(
                        name=cur["name"],
                        family=cur["family"],
                        lhs=cur["lhs"],
                        rhs=cur["rhs"],
                        phase=cur["phase"],
                        bidirectional="bidirectional" in flags,
                        oriented="oriented" in flags,
                        normalizing="normalizing" in flags,
                        side=cur["side"],
                        checks=tuple(cur["checks"]),
                        qubits=cur["qubits"],
                    )
                )
                cur = None
            else:
                raise CatalogError(f"unknown key {key!r}")
        except (KeyError, ValueError) as e:
            raise CatalogError(f"line {lineno}: {e}") from e
        except SqrtPiError as e:
            raise CatalogError(f"line {lineno}: {e}") from e
    if cur is not None:
        raise CatalogError("unterminated rule block")
    return tuple(rules)

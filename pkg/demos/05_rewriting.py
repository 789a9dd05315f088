"""The rule catalog and the rewrite engine.

Every rule in the catalog is semantically validated: both sides evaluate to
equal matrices (up to a declared global omega power for the phase-carrying
rules).  The engine applies rules at explicit paths and records traces; the
matrix evaluator remains the final authority on equivalence.
"""

from sqrtpi import apply_rule, pretty, replay, rule_db, rules_by_name, simplify
from sqrtpi.gates import s_gate
from sqrtpi.lang import BOOL, ONE_T, Prim, seq
from sqrtpi.rules import (
    derivation_s_s_to_z,
    derivation_vi_to_v_x,
    derivation_wi_to_w7,
)

db = rule_db()
print(f"catalog: {len(db)} rules in families",
      sorted({r.family for r in db}))
print()

rules = rules_by_name()
term = seq(Prim("v"), Prim("v"), Prim("v"))
print("apply E2 to", pretty(term))
print("  ->", pretty(apply_rule(term, rules["E2"], ())))
print()

print("simplify s ; s down to the z gate:")
out, trace = simplify(seq(s_gate(), s_gate()), expected=(BOOL, BOOL))
for i, step in enumerate(trace.steps, 1):
    print(f"  {i}. {step.rule:10} -> {pretty(step.term_after)}")
print("  final:", pretty(out))
print()

print("replaying the derivation vi -> v ; x:")
start, script, _ = derivation_vi_to_v_x()
tr = replay(start, script, expected=(BOOL, BOOL))
print("  start:", pretty(start))
for i, step in enumerate(tr.steps, 1):
    print(f"  {i}. {step.rule:10} [{step.direction:8}] -> {pretty(step.term_after)}")
print()

print("replaying wi -> w^7:")
start, script, _ = derivation_wi_to_w7()
tr = replay(start, script, expected=(ONE_T, ONE_T))
for i, step in enumerate(tr.steps, 1):
    print(f"  {i}. {step.rule:10} [{step.direction:8}] -> {pretty(step.term_after)}")
print()

print("a trace serializes to JSON:")
start, script, _ = derivation_s_s_to_z()
print(replay(start, script, expected=(BOOL, BOOL)).to_json())

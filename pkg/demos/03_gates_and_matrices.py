"""Named gates as terms, and their exact matrices.

Gates are stored as combinator terms; matrices are always derived by exact
evaluation, never authoritative on their own.  The display puts the whole
matrix over a common 2^k * sqrt(2)^m denominator.
"""

from sqrtpi import evaluate, named_gate, pretty, render
from sqrtpi.gates import ctrl, nctrl, phase_gate, omega_term, scalar_mul, x_gate
from sqrtpi.semantics import compose

for name in ("x", "z", "s", "t", "h", "k", "v"):
    print(f"--- {name} ---")
    print(render(evaluate(named_gate(name))))
    print()

print("--- cx (control = most significant wire) ---")
print(render(evaluate(named_gate("cx"))))
print()

print("--- ccx: a doubly controlled not ---")
print(render(evaluate(named_gate("ccx"))))
print()

print("--- a negatively controlled h ---")
print(render(evaluate(nctrl(named_gate("h")))))
print()

print("phase gates accept any scalar: P(w^3) =")
print(render(evaluate(phase_gate(omega_term(3)))))
print()

print("scalar multiplication is a term construction, e.g. w . x:")
sx = scalar_mul(omega_term(1), x_gate())
print(" ", pretty(sx))
print(render(evaluate(sx)))
print()

h = evaluate(named_gate("h"))
print("h is self-inverse:", compose(h, h).is_identity())

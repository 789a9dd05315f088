"""Compiling a circuit and deciding equivalence exactly.

The classic five-gate decomposition of the doubly-controlled not uses
controlled square roots of x.  Compiling it and the ccx macro to matrices
decides their equivalence with zero tolerance.
"""

from sqrtpi import (
    check_equiv,
    compile_circuit,
    evaluate,
    named_gate,
    parse_circuit,
    render,
)

source = """
qubits 3
csx 1 2
cx 0 1
csxdg 1 2
cx 0 1
csx 0 2
"""

circuit = parse_circuit(source)
term = compile_circuit(circuit)
print("five controlled gates on three wires compile to one term;")
print("its exact matrix:")
print(render(evaluate(term)))
print()

verdict = check_equiv(term, named_gate("ccx"))
print("equivalent to ccx (strict, entrywise):", verdict)
print()

# a phase-mode example: (s ; h)^3 is the identity up to a global w
from sqrtpi.gates import h_gate, s_gate, identity_at
from sqrtpi.lang import BOOL, seq

sh3 = seq(s_gate(), h_gate(), s_gate(), h_gate(), s_gate(), h_gate())
print("(s ; h)^3 vs id, strict:   ", check_equiv(sh3, identity_at(BOOL)))
print("(s ; h)^3 vs id, w-phase:  ",
      check_equiv(sh3, identity_at(BOOL), "up_to_omega_power"))

"""The combinator language: parsing, type inference, and inversion.

Types are finite: 0, 1, sums and products.  A well-typed combinator is an
isomorphism, so source and target always have the same dimension, and every
term has a syntactic inverse.
"""

from sqrtpi import dimension, invert, parse, parse_type_pair, pretty, typecheck, type_str

# polymorphic terms (like a bare swap+) need an expected type to pin them
examples = [
    ("swap+ ; swap+", "2 <-> 2"),
    ("v ; v", None),
    ("dist ; (id + (id * swap+)) ; factor", "2*2 <-> 2*2"),
    ("uniti*l ; (w * v) ; unite*l", None),
]

for text, expected in examples:
    term = parse(text)
    t = typecheck(term, parse_type_pair(expected) if expected else None)
    pinned = " (pinned)" if expected else ""
    print(f"{text!r}")
    print(f"  type:     {type_str(t.src)} <-> {type_str(t.tgt)}{pinned}")
    print(f"  dim:      {dimension(t.src)} -> {dimension(t.tgt)}")
    print(f"  inverse:  {pretty(invert(term))}")
    print()

term = parse("v ; (id + (w ; w)) ; v")
print("round trip: pretty then parse gives the same tree:",
      parse(pretty(term)) == term)

# gate names become available with macro expansion
h = parse("h", expand_macros=True)
print("the macro `h` expands to:", pretty(h))

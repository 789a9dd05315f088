"""Tour of the exact scalar ring Z[1/2, w].

Every matrix entry the evaluator ever produces lives in this ring: dyadic
rationals extended with a primitive 8th root of unity w.  Nothing here is a
float; equality tests are exact structural comparisons.
"""

from sqrtpi import DyadicCyclotomic, omega_pow
from sqrtpi.exactnum import HALF, IMAG, INV_SQRT2, ONE, SQRT2

print("powers of w cycle with period 8:")
for n in range(9):
    print(f"  w^{n} = {omega_pow(n)}")

print()
print("w^2 behaves as i:", omega_pow(2) * omega_pow(2) == omega_pow(4))
print("w^4 is -1:       ", omega_pow(4) == DyadicCyclotomic.from_int(-1))

print()
print("sqrt(2) is w + w^7 =", SQRT2)
print("(w + w^7)^2 =", SQRT2 * SQRT2)
print("1/sqrt(2) =", INV_SQRT2, " and its square =", INV_SQRT2 * INV_SQRT2)

print()
z = (ONE - omega_pow(2)) * HALF
print("a typical matrix entry:", z)
print("its complex conjugate: ", z.conjugate())
print("|z|^2 = z * conj(z) =  ", z * z.conjugate())

print()
print("JSON form (numerator/log-denominator pairs):", z.to_json())
print("float projection (display only):", z.to_complex())

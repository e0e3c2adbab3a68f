"""Offline arbitrary-precision reference values frozen into the C++ tests.

Run: python3 tests/oracles/sigma0_reference.py
"""
import mpmath as mp

mp.mp.dps = 50
B = mp.mpf("0.31522")
c = mp.mpf("137.036")
ev_per_hartree = mp.mpf("27.211386245988")
Eb = mp.mpf("0.754") / ev_per_hartree
kb = mp.sqrt(2 * Eb)


def sigma0(E):
    return 16 * mp.sqrt(2) * B**2 * mp.pi**2 * E**mp.mpf(1.5) / (3 * c * (Eb + E) ** 3)


print("E_b [hartree]        ", mp.nstr(Eb, 20))
print("k_b [a.u.]           ", mp.nstr(kb, 20))
print("sigma0(E_b)          ", mp.nstr(sigma0(Eb), 20))
print("sigma0(0.5 E_b)      ", mp.nstr(sigma0(Eb / 2), 20))
E1 = (mp.mpf("1.0") - mp.mpf("0.754")) / ev_per_hartree
print("sigma0(E_photon=1 eV)", mp.nstr(sigma0(E1), 20))
# argmax of sigma0 over E: d/dE [E^1.5/(Eb+E)^3] = 0  ->  E = Eb
print("d sigma0/dE at E_b   ", mp.nstr(mp.diff(sigma0, Eb), 5))

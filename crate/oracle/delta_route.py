#!/usr/bin/env python3
"""Oracle: L(s, Delta) via the completed-integral representation, using
mpmath's incomplete gamma (independent of the Rust series implementation).

Lambda(s) = sum_n tau(n) [ G(s+11/2, 2 pi n) + G(1-s+11/2, 2 pi n) ],
G(w, c) = int_1^inf e^{-cy} y^{w-1} dy = c^{-w} Gamma(w, c)   (upper).
L(s) = (2 pi)^{11/2} Lambda(s) / ((2 pi)^{-s} Gamma(s + 11/2)).

Also: Dirichlet-series check at Re(s)=3, and the first zeros on the
critical line via Hardy-Z sign changes.
"""
import mpmath as mp

mp.mp.dps = 30

# tau(n) exact values
tau = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920,
       534612, -370944, -577738, 401856, 1217160, 987136, -6905934, 2727432,
       10661420, -7109760]


def G(w, c):
    return mp.power(c, -w) * mp.gammainc(w, a=c, b=mp.inf)


def Lam(s):
    tot = mp.mpf(0)
    for n in range(1, 16):
        c = 2 * mp.pi * n
        tot += tau[n - 1] * (G(s + mp.mpf(11) / 2, c) + G(1 - s + mp.mpf(11) / 2, c))
    return tot


def L(s):
    return mp.power(2 * mp.pi, mp.mpf(11) / 2) * Lam(s) / (
        mp.power(2 * mp.pi, -s) * mp.gamma(s + mp.mpf(11) / 2))


def Lseries(s):
    return mp.nsum(lambda n: tau[int(n) - 1] * mp.power(n, -s - mp.mpf(11) / 2),
                   [1, 20])


for s in [mp.mpf(3), mp.mpc(3, 5)]:
    print("series check s=", s, " route=", mp.nstr(L(s), 18), " series=",
          mp.nstr(Lseries(s), 18))

for s in [mp.mpc(0.5, 5), mp.mpc(0.5, 14), mp.mpc(2, 10)]:
    print("L(", s, ") =", mp.nstr(L(s), 18))

# FE residual at a random point
s0 = mp.mpc(0.7, 3.3)
fe = Lam(s0) - Lam(1 - s0)
print("FE residual:", mp.nstr(abs(fe), 5))


# Hardy Z: Lambda(1/2+it) is real (omega=1); find sign changes.
def Z(t):
    return mp.re(Lam(mp.mpc(0.5, t)))


prev_t, prev_z = 0.25, Z(0.25)
zeros = []
t = 0.5
while t < 32 and len(zeros) < 8:
    z = Z(t)
    if mp.sign(z) != mp.sign(prev_z):
        r = mp.findroot(Z, (prev_t, t), solver='bisect')
        zeros.append(r)
    prev_t, prev_z = t, z
    t += 0.25
print("first Delta zeros:", [mp.nstr(z, 15) for z in zeros])

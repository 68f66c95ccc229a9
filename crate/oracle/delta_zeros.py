#!/usr/bin/env python3
"""Generate ordinates of zeros of L(s, Delta) on the critical line up to
T=100 via the completed-integral representation at high precision."""
import mpmath as mp

mp.mp.dps = 60

# tau(n) via Euler-product expansion (pentagonal) to n=40
N = 40
pent = {}
k = 1
pent[0] = 1
while k * (3 * k - 1) // 2 < N:
    pent[k * (3 * k - 1) // 2] = (-1) ** k
    if k * (3 * k + 1) // 2 < N:
        pent[k * (3 * k + 1) // 2] = (-1) ** k
    k += 1
coeffs = [0] * N
for e, c in pent.items():
    coeffs[e] = c
acc = [0] * N
acc[0] = 1
for _ in range(24):
    new = [0] * N
    for i, v in enumerate(acc):
        if v:
            for e, c in pent.items():
                if i + e < N:
                    new[i + e] += v * c
    acc = new
tau = acc[:]  # tau(n) = acc[n-1] shifted: q * prod -> coefficient of q^n is acc[n-1]


def G(w, c):
    return mp.power(c, -w) * mp.gammainc(w, a=c, b=mp.inf)


def Lam(s):
    tot = mp.mpf(0)
    for n in range(1, 30):
        c = 2 * mp.pi * n
        t = tau[n - 1]
        if t == 0 and n > 1:
            continue
        tot += t * (G(s + mp.mpf(11) / 2, c) + G(1 - s + mp.mpf(11) / 2, c))
    return tot


def Z(t):
    return mp.re(Lam(mp.mpc(0.5, t)))


zeros = []
prev_t, prev_z = mp.mpf("0.25"), Z(mp.mpf("0.25"))
t = mp.mpf("0.5")
step = mp.mpf("0.25")
while t <= 100:
    z = Z(t)
    if mp.sign(z) != mp.sign(prev_z):
        r = mp.findroot(Z, (prev_t, t), solver="anderson")
        zeros.append(r)
    prev_t, prev_z = t, z
    t += step

with open("delta_zeros_100.txt", "w") as f:
    f.write("# label: delta\n")
    for z in zeros:
        f.write(mp.nstr(z, 16) + "\n")
print(len(zeros), "zeros;", [mp.nstr(z, 10) for z in zeros[:5]])

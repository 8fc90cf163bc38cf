# SPDX-License-Identifier: Apache-2.0
"""Reference values for the unit tests, computed with mpmath.

The hop and end-to-end distributions are computed from the physical model
(gamma = gamma_bar (h_l hf A_o)^2 (G/mu)^(2/alpha) U^(2/phi), G ~ Gamma(mu),
U ~ U(0,1)) by direct integration, not from the closed forms under test.

Run: python3 tests/oracles/gen_reference.py
"""
import mpmath as mp

mp.mp.dps = 30


def show(label, value):
    if isinstance(value, mp.mpc):
        print(f"{label}: {mp.nstr(value.real, 17)} {mp.nstr(value.imag, 17)}")
    else:
        print(f"{label}: {mp.nstr(value, 17)}")


def hop_cdf_model(alpha, mu, phi, gbar, x, s=1):
    """P(gamma < x) = E_G[min(1, (x/(gbar s^2))^(phi/2) (G/mu)^(-phi/alpha))]."""
    r = (mp.mpf(x) / (gbar * s * s)) ** (mp.mpf(phi) / 2)
    # min switches at G* where r (G/mu)^(-phi/alpha) = 1
    g_star = mu * r ** (mp.mpf(alpha) / phi)
    dens = lambda g: g ** (mu - 1) * mp.exp(-g) / mp.gamma(mu)
    lower = mp.gammainc(mu, 0, g_star, regularized=True)
    upper = mp.quad(lambda g: dens(g) * r * (g / mu) ** (-mp.mpf(phi) / alpha), [g_star, g_star + 10, mp.inf])
    return lower + upper


def hop_cdf_closed(alpha, mu, phi, gbar, x, s=1):
    """Closed form in terms of incomplete gamma functions (for the e2e integral)."""
    U = mu * (mp.mpf(x) / (gbar * s * s)) ** (mp.mpf(alpha) / 2)
    c = mp.mpf(phi) / alpha
    return (U ** c * mp.gammainc(mu - c, U) + mp.gammainc(mu, 0, U)) / mp.gamma(mu) if mu - c != 0 else None


def e2e_cdf_model(h1, h2, gb1, gb2, C, x):
    """E over gamma_2 of F_1(x (1 + C / gamma_2)); gamma_2 integrated over (G, U)."""
    a2, m2, p2 = h2

    def inner(g, u):
        g2 = gb2 * (g / m2) ** (mp.mpf(2) / a2) * u ** (mp.mpf(2) / p2)
        return hop_cdf_closed(*h1, gb1, x * (1 + C / g2)) * g ** (m2 - 1) * mp.exp(-g) / mp.gamma(m2)

    return mp.quad(inner, [0, 1, 5, mp.inf], [0, mp.mpf(10) ** -6, mp.mpf(10) ** -2, 1])


print("# SPDX-License-Identifier: Apache-2.0")
print("# log-gamma")
for z in [mp.mpc(3, 4), mp.mpc(-2.5, 0.3), mp.mpc(0.5, -7), mp.mpc(-7.3, -0.01), mp.mpc(25, 40)]:
    show(f"loggamma({z})", mp.loggamma(z))

print("# upper incomplete gamma")
for s, x in [(0.5, 1), (2.5, 0.3), (-0.5, 0.2), (-1.5, 2.0), (-3.2, 0.7), (0, 0.1), (-2, 3), (-0.7, 40)]:
    show(f"Gamma({s},{x})", mp.gammainc(s, x))

print("# Meijer G")
show("G21_12(2 | 0.5; 0.25, 0)", mp.meijerg([[0.5], []], [[0.25, 0], []], 2))
show("G20_02(1.7 | 0.3, 1.1)", mp.meijerg([[], []], [[0.3, 1.1], []], 1.7))
show("G21_23(0.8 | 1, 0.2; 0.9, 0.2, 0)", mp.meijerg([[1], [0.2]], [[0.9, 0.2], [0]], 0.8))

print("# hop CDF from the model")
for hop, gb, x, s in [((2, 1, 3.6333), 10, 1.5848931924611136, 1), ((1.2, 3, 1), 10, 2, 1),
                      ((1.3, 2, 3.6333), 31.6, 0.5, 1), ((2.5, 1.6, 5.4), 5, 3, 0.5)]:
    show(f"hop_cdf{hop} gb={gb} x={x} s={s}", hop_cdf_model(*hop, gb, x, s))

print("# end-to-end CDF from the model")
for h1, h2, gb1, gb2, C, x in [((1.2, 3, 1), (1.3, 2, 3.6333), 10, 10, 1.7, 1.5848931924611136),
                               ((2, 1, 3.6333), (2, 1, 3.6333), 100, 100, 1.7, 1.5848931924611136),
                               ((2, 2.5, 6.6), (2, 1.7, 1.2), 31.6, 10, 1.7, 4.0)]:
    show(f"e2e_cdf{h1}{h2} gb=({gb1},{gb2}) C={C} x={x}", e2e_cdf_model(h1, h2, gb1, gb2, C, x))

print("# multirelay")
show("ser_ratio(K=2,v=0.5)", mp.gamma(2) / mp.gamma(1.5) ** 2 / 2)
show("ser_ratio(K=3,v=1.8)", mp.gamma(3 * 1.8 + 1) / mp.gamma(2.8) ** 3 * mp.mpf(3) ** (-3 * 1.8))

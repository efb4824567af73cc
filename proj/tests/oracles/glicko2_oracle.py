#!/usr/bin/env python3
"""Step-by-step Glicko-2 rating period, written independently of the C++ code.

Prints the updated rating, deviation and volatility for each scenario with
enough digits to freeze into unit tests.
"""
import math

SCALE = 173.7178


def g(phi):
    return 1.0 / math.sqrt(1.0 + 3.0 * phi * phi / (math.pi * math.pi))


def expected(mu, mu_j, phi_j):
    return 1.0 / (1.0 + math.exp(-g(phi_j) * (mu - mu_j)))


def period(rating, rd, sigma, games, tau=0.5, eps=1e-6):
    mu = (rating - 1500.0) / SCALE
    phi = rd / SCALE
    if not games:
        phi_star = math.sqrt(phi * phi + sigma * sigma)
        return rating, phi_star * SCALE, sigma

    opp = [((r - 1500.0) / SCALE, d / SCALE, s) for r, d, s in games]
    v_inv = 0.0
    delta_sum = 0.0
    for mu_j, phi_j, s in opp:
        e = expected(mu, mu_j, phi_j)
        v_inv += g(phi_j) ** 2 * e * (1.0 - e)
        delta_sum += g(phi_j) * (s - e)
    v = 1.0 / v_inv
    delta = v * delta_sum

    a = math.log(sigma * sigma)

    def f(x):
        ex = math.exp(x)
        num = ex * (delta * delta - phi * phi - v - ex)
        den = 2.0 * (phi * phi + v + ex) ** 2
        return num / den - (x - a) / (tau * tau)

    big_a = a
    if delta * delta > phi * phi + v:
        big_b = math.log(delta * delta - phi * phi - v)
    else:
        k = 1
        while f(a - k * tau) < 0:
            k += 1
        big_b = a - k * tau
    f_a, f_b = f(big_a), f(big_b)
    while abs(big_b - big_a) > eps:
        big_c = big_a + (big_a - big_b) * f_a / (f_b - f_a)
        f_c = f(big_c)
        if f_c * f_b <= 0:
            big_a, f_a = big_b, f_b
        else:
            f_a /= 2.0
        big_b, f_b = big_c, f_c
    sigma_new = math.exp(big_a / 2.0)

    phi_star = math.sqrt(phi * phi + sigma_new * sigma_new)
    phi_new = 1.0 / math.sqrt(1.0 / (phi_star * phi_star) + 1.0 / v)
    mu_new = mu + phi_new * phi_new * delta_sum
    return mu_new * SCALE + 1500.0, phi_new * SCALE, sigma_new


SCENARIOS = {
    "worked_example": ((1500, 200, 0.06), [(1400, 30, 1), (1550, 100, 0), (1700, 300, 0)]),
    "no_games": ((1500, 200, 0.06), []),
    "three_wins_vs_equal": ((1500, 350, 0.06), [(1500, 350, 1), (1500, 350, 1), (1500, 350, 1)]),
    "draw_vs_stronger": ((1400, 80, 0.05), [(1600, 50, 0.5)]),
}

if __name__ == "__main__":
    for name, ((r, rd, sig), games) in SCENARIOS.items():
        nr, nrd, nsig = period(r, rd, sig, games)
        print(f"{name}: rating {nr:.10f} deviation {nrd:.10f} volatility {nsig:.12f}")

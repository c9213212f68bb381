"""Independent transcription of the update rules in 50-digit arithmetic.

Prints the values frozen into tests/unit. Re-run after changing any
scenario here and paste the output into the matching test.
"""
from mpmath import mp, mpf, sqrt, log, exp

mp.dps = 50


def aegdm(grad_f, theta, eta, mu, c, steps, ema=False):
    theta = [mpf(x) for x in theta]
    f0, _ = grad_f(theta)
    r = [sqrt(f0 + c)] * len(theta)
    m = [mpf(0)] * len(theta)
    out = []
    for _ in range(steps):
        f, g = grad_f(theta)
        v = [gi / (2 * sqrt(f + c)) for gi in g]
        m = [mu * mi + ((1 - mu) * vi if ema else vi) for mi, vi in zip(m, v)]
        r = [ri / (1 + 2 * eta * vi * vi) for ri, vi in zip(r, v)]
        theta = [ti - 2 * eta * ri * mi for ti, ri, mi in zip(theta, r, m)]
        out.append((theta, r, m, v))
    return out


def half_square(theta):
    return theta[0] ** 2 / 2, [theta[0]]


def rosenbrock(theta):
    x1, x2 = theta
    f = (1 - x1) ** 2 + 100 * (x2 - x1 ** 2) ** 2
    g = [-2 * (1 - x1) - 400 * x1 * (x2 - x1 ** 2), 200 * (x2 - x1 ** 2)]
    return f, g


def show(name, xs):
    print(name, ", ".join(mp.nstr(x, 17) for x in xs))


print("# aegdm 1D theta^2/2, c=1, theta0=1, mu=0, eta=0.1")
theta, r, m, v = aegdm(half_square, [1], mpf("0.1"), 0, 1, 1)[0]
show("v0", v)
show("r1", r)
show("theta1", theta)

print("# aegdm rosenbrock (-3,-4), eta=1e-4, mu=0.9, two steps")
for k, (theta, r, m, v) in enumerate(aegdm(rosenbrock, [-3, -4], mpf("1e-4"), mpf("0.9"), 1, 2), 1):
    show(f"theta{k}", theta)
    show(f"r{k}", r)
    show(f"m{k}", m)

print("# aegd 1D theta^2/2, eta=0.1, c=1, theta0=2, five iterates")
show("theta1..5", [s[0][0] for s in aegdm(half_square, [2], mpf("0.1"), 0, 1, 5)])

print("# rosenbrock at (-3,-4)")
f, g = rosenbrock([mpf(-3), mpf(-4)])
show("f,g", [f] + g)

print("# step-sum lhs, aegd 1D theta^2/2, theta0=1, eta=0.1, T=4")
prev = mpf(1)
total = mpf(0)
for theta, r, m, v in aegdm(half_square, [1], mpf("0.1"), 0, 1, 4):
    total += (theta[0] - prev) ** 2
    prev = theta[0]
show("lhs", [total])

print("# v-average, aegd 1D theta^2/2, theta0=1, eta=0.1, T=2")
steps = aegdm(half_square, [1], mpf("0.1"), 0, 1, 2)
lhs = (abs(steps[0][3][0]) + abs(steps[1][3][0])) / 2
rhs = sqrt(sqrt(mpf("1.5")) / 2) / sqrt(mpf("0.1") * 2 * steps[1][1][0])
show("lhs,rhs", [lhs, rhs])

print("# energy for hand trace r0=1, v=(1, 0.5, 0), eta=0.5")
r = mpf(1)
for vi in [1, mpf("0.5"), 0]:
    r = r / (1 + 2 * mpf("0.5") * vi * vi)
    show("r", [r])

print("# logistic at theta=0")
show("ln2", [log(2)])

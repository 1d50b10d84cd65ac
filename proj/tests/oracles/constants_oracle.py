"""Independent evaluation of the table constants at fixed inputs with mpmath.

Prints frozen values used by test_constants.cpp.
"""
from mpmath import mp, mpf, power, sqrt

mp.dps = 30


def lidexp(a, b, P):
    n, al, be, ga, s, t = P["n"], P["alpha"], P["beta"], P["gamma"], P["s"], P["t"]
    return n + 1 - be + ga + 2 / (a * b) * (al - ga + (1 - b) * s + (1 - a * b) * t)


def table1(a, b, d, etap, eps, D, P):
    A, B, n, al, be, ga, s, t = (P[k] for k in ("A", "B", "n", "alpha", "beta", "gamma", "s", "t"))
    q = 1 - d
    F = 2 / b + 4 * (b - 1) / b**2 * d / q
    if b > 1:
        C1 = 8 * (b - 1) / (a**2 * b**3) * q ** (a - 2)
        C3 = F * power(D, 2 - 2 / a) + 2 * (a - 2) / (a**2 * b) + 4 * (b - 1) / (a**2 * b**2)
        C5 = 2 * (a - 2) / (a**2 * b) * q ** (a - 1) + 4 * (b - 1) / (a**2 * b**2) * q ** (a - 2)
        C2 = F * (2 * (a - 2) / (a**2 * b) + 4 * (b - 1) / (a**2 * b**2))
    else:
        C1 = 8 * (b - 1) / (a**2 * b**3) * (d * (a - 2) + 1) + 4 * (a - 2) / (a**2 * b**2) * q ** (a - 1)
        C2 = 4 * (a - 2) / (a**2 * b**2) + 8 * (b - 1) / (a**2 * b**3) * q ** (a - 2)
        C3 = 2 / b * power(D, 2 - 2 / a) + 2 * (a - 2) / (a**2 * b) + 4 * (b - 1) / (a**2 * b**2) * q ** (a - 2)
        C5 = 2 * (a - 2) / (a**2 * b) * q ** (a - 1) + 4 * (b - 1) / (a**2 * b**2)
    C4 = min(2 / b, C1 / C3)
    C6 = 1 + a**2 * power(D, 4 - 4 / a) + a**2 * b**2 / 4 * q ** (2 - a) * power(D, 2 - 4 / (a * b))
    C7 = (a * b / 2) ** ga * min(1, C6 ** (-ga / 2)) * min(1, q ** ((1 - a / 2) * ga))
    e = be - n - 1
    C8 = min(2**e * (1 + (a * etap * eps ** (a - 1)) ** 2) ** (e / 2), 1)
    C9 = B / A * C4**s * C5**t * C7 * C8
    C10 = C9 * min(q ** (al / b + (a / 2 - 1 / b) * ga + (1 / b - 1) * s + (1 / b - a) * t), 1)
    C11 = power(D, lidexp(a, b, P))
    return dict(C1=C1, C2=C2, C3=C3, C4=C4, C5=C5, C6=C6, C7=C7, C8=C8, C9=C9, C10=C10, C11=C11, C12=C10 * C11)


def table2(a, b, eta, eps, rho, P):
    A, B, n, al, be, ga, s, t = (P[k] for k in ("A", "B", "n", "alpha", "beta", "gamma", "s", "t"))
    C13 = 2 / b
    C14 = power(2, 6 / a - 4) * ((n - 1) / b + 2 * abs(b - 1) / b**2) * eta**2 * eps ** (2 * a - 2) + (
        2 * abs(a - 2) / (a**2 * b) + 4 * abs(b - 1) / (a**2 * b**2))
    e = be - n - 1
    C15 = max(2**e * (1 + (a * eta * eps ** (a - 1)) ** 2) ** (e / 2), 1)
    vf = 1 - power(mpf(1) / 4, 2 / a)
    C16 = 4 * (1 / rho + 1) ** 2 * (1 + (2 * a * eta * eps ** (a - 1)) ** 2) * max(vf ** (2 - a), 1)
    C17 = max((a * b / 2) ** ga, C16 ** (-ga / 2))
    C18 = B / A * C13**s * C14**t * C15 * C17
    C19 = max(vf ** ((al + (b - 1) * ga + (1 - b) * s + (1 - a * b) * t) / b), 1)
    C21 = (eta * eps**a / 4) ** lidexp(a, b, P)
    return dict(C13=C13, C14=C14, C15=C15, C16=C16, C17=C17, C18=C18, C19=C19, C20=C18 * C19, C21=C21,
                C22=C18 * C19 * C21)


def table3(a, b, d, eta, etap, eps, D, rho, rhop, P):
    A, B, n, al, be, ga, s, t = (P[k] for k in ("A", "B", "n", "alpha", "beta", "gamma", "s", "t"))
    q = 1 - d
    F = 2 / b + 4 * (b - 1) / b**2 * d / q
    G = 2 * (a - 2) / (a**2 * b) * q ** (a - 1) + 4 * (b - 1) / (a**2 * b**2) * q ** (a - 2)
    Ct1 = 8 * (b - 1) / (a**2 * b**3) * q
    Ct3 = F * power(D, 2 - 2 / a) + G
    Ct4 = min(2 / b, Ct1 / Ct3)
    Ct5 = 2 * (a * b - 2) / (a**2 * b**2)
    vf = 1 - power(mpf(1) / 4, 2 / a)
    Ct6 = 4 * (1 / rhop + 1) ** 2 * (1 + (2 * a * etap * eps ** (a - 1)) ** 2) * max(vf ** (2 - a), 1)
    Ct7 = min((a * b / 2) ** ga, Ct6 ** (-ga / 2))
    e = be - n - 1
    C8 = min(2**e * (1 + (a * etap * eps ** (a - 1)) ** 2) ** (e / 2), 1)
    Ct10 = B / A * Ct4**s * Ct5**t * Ct7 * C8 * min(vf ** ((al + (b - 1) * ga + (1 - b) * s + (1 - a * b) * t) / b), 1)
    t2 = table2(a, b, eta, eps, rho, P)
    Ct16 = 16 / a**2 * (1 / rho + 1) ** 2 * (1 + (2 * a * eta * eps ** (a - 1)) ** 2)
    Ct17 = max((a * b / 2) ** ga, Ct16 ** (-ga / 2))
    Ct18 = B / A * t2["C13"] ** s * t2["C14"] ** t * t2["C15"] * Ct17
    return dict(Ct1=Ct1, Ct2=F * G, Ct3=Ct3, Ct4=Ct4, Ct5=Ct5, Ct6=Ct6, Ct7=Ct7, Ct10=Ct10,
                Ct12=Ct10 * power(D, lidexp(a, b, P)), Ct16=Ct16, Ct17=Ct17, Ct18=Ct18, Ct20=Ct18 * t2["C19"],
                Ct22=Ct18 * t2["C19"] * t2["C21"])


P = dict(A=mpf("1.5"), B=mpf("0.75"), n=3, alpha=mpf("3.5"), beta=mpf("5.25"), gamma=mpf("0.5"), s=mpf("1.25"),
         t=mpf("0.75"))


def show(name, d):
    print("// " + name)
    for k, v in d.items():
        print('{"%s", %.17g},' % (k, float(v)))


show("table1 step11 a=3 b=1.6 delta=0.1 eta'=2 eps=0.4 diam=0.9",
     table1(mpf(3), mpf("1.6"), mpf("0.1"), mpf(2), mpf("0.4"), mpf("0.9"), P))
show("table1 step12 a=4 b=0.7 delta=0.05 eta'=2 eps=0.4 diam=0.9",
     table1(mpf(4), mpf("0.7"), mpf("0.05"), mpf(2), mpf("0.4"), mpf("0.9"), P))
show("table2 a=3 b=1.2 eta=2 eps=0.4 rho=0.3", table2(mpf(3), mpf("1.2"), mpf(2), mpf("0.4"), mpf("0.3"), P))
show("table3 a=1.5 b=2 delta=0.1 eta=2 eta'=3 eps=0.4 diam=0.9 rho=0.3 rho'=0.2",
     table3(mpf("1.5"), mpf(2), mpf("0.1"), mpf(2), mpf(3), mpf("0.4"), mpf("0.9"), mpf("0.3"), mpf("0.2"), P))

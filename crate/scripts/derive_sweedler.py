"""Derives the Sweedler-algebra constants used as test oracles.

The algebra is rebuilt here from its presentation (g^2 = 1, x^2 = 0,
xg = -gx, g grouplike, x (g,1)-primitive) without reading any Rust output.
Every quantity is obtained by a sympy nullspace or solve, and the results are
written to fixtures/oracle/sweedler.json as exact "p/q" strings in the basis
1, g, x, gx (index a + 2b for g^a x^b).

Run from the workspace root: python3 scripts/derive_sweedler.py
"""

import itertools
import json
import pathlib

import sympy as sp

DIM = 4
BASIS = [(0, 0), (1, 0), (0, 1), (1, 1)]
NAMES = ["1", "g", "x", "gx"]


def index(a, b):
    return a + 2 * b


def basis_product(i, j):
    """g^a x^b * g^c x^d = (-1)^(bc) g^(a+c) x^(b+d), zero when b + d > 1."""
    (a, b), (c, d) = BASIS[i], BASIS[j]
    if b + d > 1:
        return sp.zeros(DIM, 1)
    v = sp.zeros(DIM, 1)
    v[index((a + c) % 2, b + d)] = (-1) ** (b * c)
    return v


def mul(u, v):
    out = sp.zeros(DIM, 1)
    for i, j in itertools.product(range(DIM), repeat=2):
        if u[i] != 0 and v[j] != 0:
            out += u[i] * v[j] * basis_product(i, j)
    return out


def e(i):
    v = sp.zeros(DIM, 1)
    v[i] = 1
    return v


ONE, G, X = e(0), e(1), e(2)

# Tensors in H⊗H are DIM*DIM column vectors with index i*DIM + j.


def kron(u, v):
    return sp.Matrix([u[i] * v[j] for i in range(DIM) for j in range(DIM)])


def tmul(s, t):
    out = sp.zeros(DIM * DIM, 1)
    for p, q in itertools.product(range(DIM * DIM), repeat=2):
        if s[p] != 0 and t[q] != 0:
            i, j = divmod(p, DIM)
            k, l = divmod(q, DIM)
            out += s[p] * t[q] * kron(basis_product(i, k), basis_product(j, l))
    return out


def flip(t):
    return sp.Matrix([t[j * DIM + i] for i in range(DIM) for j in range(DIM)])


def on_factors(f1, f2, t):
    """(f1 ⊗ f2)(t) for linear maps given as callables on vectors."""
    out = sp.zeros(DIM * DIM, 1)
    for p in range(DIM * DIM):
        if t[p] != 0:
            i, j = divmod(p, DIM)
            out += t[p] * kron(f1(e(i)), f2(e(j)))
    return out


def contract(t, f, slot):
    """Applies the form f to one tensor factor, returning a vector."""
    out = sp.zeros(DIM, 1)
    for p in range(DIM * DIM):
        i, j = divmod(p, DIM)
        if slot == 1:
            out += t[p] * f[j] * e(i)
        else:
            out += t[p] * f[i] * e(j)
    return out


def multiply_out(t):
    out = sp.zeros(DIM, 1)
    for p in range(DIM * DIM):
        if t[p] != 0:
            i, j = divmod(p, DIM)
            out += t[p] * basis_product(i, j)
    return out


# Comultiplication and antipode are extended multiplicatively
# (antimultiplicatively for S) from the generators.
DELTA_G = kron(G, G)
DELTA_X = kron(X, ONE) + kron(G, X)


def comul_basis(i):
    a, b = BASIS[i]
    t = kron(ONE, ONE)
    for _ in range(a):
        t = tmul(t, DELTA_G)
    for _ in range(b):
        t = tmul(t, DELTA_X)
    return t


def comul(v):
    out = sp.zeros(DIM * DIM, 1)
    for i in range(DIM):
        if v[i] != 0:
            out += v[i] * comul_basis(i)
    return out


def antipode_basis(i):
    a, b = BASIS[i]
    s_x = -mul(G, X)
    v = ONE
    # S(g^a x^b) = S(x)^b S(g)^a
    for _ in range(b):
        v = mul(v, s_x)
    for _ in range(a):
        v = mul(v, G)
    return v


S = sp.Matrix.hstack(*[antipode_basis(i) for i in range(DIM)])
COUNIT = sp.Matrix([[1, 1, 0, 0]])


def normalized(v):
    v = sp.Matrix(v)
    lead = next(c for c in v if c != 0)
    return v / lead


def single(space, what):
    assert len(space) == 1, f"{what}: dimension {len(space)}"
    return normalized(space[0])


def solve_vector(equations, unknowns):
    sol = sp.solve(equations, unknowns, dict=True)
    assert len(sol) == 1, sol
    return sp.Matrix([sol[0][u] for u in unknowns])


def inverse(v):
    w = sp.Matrix(sp.symbols("w0:4"))
    return solve_vector(list(mul(v, w) - ONE), list(w))


def classical_integral(side):
    """xΛ = ε(x)Λ (left) or Λx = ε(x)Λ (right) for every basis x."""
    lam = sp.Matrix(sp.symbols("l0:4"))
    eqs = []
    for i in range(DIM):
        prod = mul(e(i), lam) if side == "left" else mul(lam, e(i))
        eqs.extend(prod - COUNIT[i] * lam)
    system = sp.Matrix([[sp.diff(q, s) for s in lam] for q in eqs])
    return single(system.nullspace(), f"{side} integral of H")


def dual_integral(side):
    """(id⊗λ)Δ = λ(·)1 (left) or (λ⊗id)Δ = λ(·)1 (right) on every basis x."""
    lam = sp.Matrix(sp.symbols("m0:4"))
    eqs = []
    for i in range(DIM):
        d = comul_basis(i)
        got = contract(d, lam, 1 if side == "left" else 2)
        eqs.extend(got - lam[i] * ONE)
    system = sp.Matrix([[sp.diff(q, s) for s in lam] for q in eqs])
    return single(system.nullspace(), f"{side} integral of H*")


def distinguished_g(lam_right):
    """(id⊗λ)Δ(x) = λ(x)g for every basis x, λ a right integral of H*."""
    g = sp.Matrix(sp.symbols("g0:4"))
    eqs = []
    for i in range(DIM):
        eqs.extend(contract(comul_basis(i), lam_right, 1) - lam_right[i] * g)
    return solve_vector(eqs, list(g))


def distinguished_nu(big_lambda_left):
    nu = sp.Matrix(sp.symbols("n0:4"))
    eqs = []
    for i in range(DIM):
        eqs.extend(mul(big_lambda_left, e(i)) - nu[i] * big_lambda_left)
    return solve_vector(eqs, list(nu))


def antipode_order():
    power, k = S, 1
    while power != sp.eye(DIM):
        power, k = power * S, k + 1
    return k


def r_matrix(lam, signs):
    """½(1⊗1 + 1⊗g + g⊗1 − g⊗g) + (λ/2)(s₀x⊗x + s₁x⊗gx + s₂gx⊗gx + s₃gx⊗x)."""
    half = sp.Rational(1, 2)
    gx = mul(G, X)
    nilpotent = [kron(X, X), kron(X, gx), kron(gx, gx), kron(gx, X)]
    return half * (kron(ONE, ONE) + kron(ONE, G) + kron(G, ONE) - kron(G, G)) + lam * half * sum(
        (s * t for s, t in zip(signs, nilpotent)), sp.zeros(DIM * DIM, 1)
    )


def is_r_matrix(r):
    """Braiding and both coproduct identities for trivial crossing, π = {1}."""
    for i in range(DIM):
        if tmul(r, comul_basis(i)) != tmul(flip(comul_basis(i)), r):
            return False
    # (Δ⊗id)R = R13 R23 and (id⊗Δ)R = R13 R12, written on H⊗H⊗H with
    # index (i*DIM + j)*DIM + k.
    n3 = DIM ** 3

    def t3(i, j, k):
        v = sp.zeros(n3, 1)
        v[(i * DIM + j) * DIM + k] = 1
        return v

    def mul3(s, t):
        out = sp.zeros(n3, 1)
        for p, q in itertools.product(range(n3), repeat=2):
            if s[p] != 0 and t[q] != 0:
                i, rest = divmod(p, DIM * DIM)
                j, k = divmod(rest, DIM)
                a, rest = divmod(q, DIM * DIM)
                b, c = divmod(rest, DIM)
                pi, pj, pk = basis_product(i, a), basis_product(j, b), basis_product(k, c)
                for x, y, z in itertools.product(range(DIM), repeat=3):
                    coeff = pi[x] * pj[y] * pk[z]
                    if coeff != 0:
                        out += s[p] * t[q] * coeff * t3(x, y, z)
        return out

    def place(r, slots):
        out = sp.zeros(n3, 1)
        for p in range(DIM * DIM):
            if r[p] != 0:
                i, j = divmod(p, DIM)
                idx = [0, 0, 0]
                idx[slots[0]], idx[slots[1]] = i, j
                out += r[p] * t3(*idx)
        return out

    def comul_slot(r, slot):
        out = sp.zeros(n3, 1)
        for p in range(DIM * DIM):
            if r[p] != 0:
                i, j = divmod(p, DIM)
                d = comul_basis(i if slot == 0 else j)
                for q in range(DIM * DIM):
                    if d[q] != 0:
                        a, b = divmod(q, DIM)
                        out += r[p] * d[q] * (t3(a, b, j) if slot == 0 else t3(i, a, b))
        return out

    return comul_slot(r, 0) == mul3(place(r, (0, 2)), place(r, (1, 2))) and comul_slot(r, 1) == mul3(
        place(r, (0, 2)), place(r, (0, 1))
    )


def nilpotent_signs():
    """The sign patterns for which R_1 is an R-matrix."""
    return [s for s in itertools.product((1, -1), repeat=4) if is_r_matrix(r_matrix(1, s))]


def antipode(v):
    return S * v


def drinfeld_u(r):
    """u = m(S⊗id)σ(R)."""
    return multiply_out(on_factors(antipode, lambda v: v, flip(r)))


def twists(r):
    """All θ with θx = xθ, S(θ) = θ and Δ(θ) = (θ⊗θ)σ(R)R, θ invertible."""
    t = sp.Matrix(sp.symbols("t0:4"))
    eqs = list(antipode(t) - t)
    for i in range(DIM):
        eqs.extend(mul(t, e(i)) - mul(e(i), t))
    rhs = tmul(tmul(kron(t, t), flip(r)), r)
    eqs.extend(comul(t) - rhs)
    found = []
    for sol in sp.solve(eqs, list(t), dict=True):
        theta = sp.Matrix([sol.get(s, s) for s in t])
        if theta.free_symbols:
            raise AssertionError(f"twist family is not finite: {theta.T}")
        try:
            inverse(theta)
        except AssertionError:
            continue
        found.append(theta)
    return sorted(found, key=lambda v: [str(c) for c in v])


def text(v):
    return [str(sp.nsimplify(c)) for c in v]


def main():
    big_left = classical_integral("left")
    big_right = classical_integral("right")
    lam_left = dual_integral("left")
    lam_right = dual_integral("right")
    g = distinguished_g(lam_right)
    nu = distinguished_nu(big_left)
    counit_of_integral = (COUNIT * big_left)[0]
    out = {
        "basis": NAMES,
        "big_lambda_left": text(big_left),
        "big_lambda_right": text(big_right),
        "lambda_left": text(lam_left),
        "lambda_right": text(lam_right),
        "g": text(g),
        "nu": text(nu),
        "antipode_order": antipode_order(),
        "semisimple": counit_of_integral != 0,
        "cosemisimple": lam_right[0] != 0,
        "unimodular": list(nu) == list(COUNIT),
        "rmatrices": [],
    }
    signs = nilpotent_signs()
    # The patterns come in pairs s, -s (that is, λ and -λ); keep s₀ = +1.
    assert len(signs) == 2 and signs[0] == tuple(-c for c in signs[1]), signs
    signs = [s for s in signs if s[0] == 1]
    out["nilpotent_signs"] = list(signs[0])
    for lam in (0, 1):
        r = r_matrix(lam, signs[0])
        assert is_r_matrix(r)
        u = drinfeld_u(r)
        u_inv = inverse(u)
        ell = mul(inverse(antipode(u)), u)
        h = contract(r, nu, 1)
        out["rmatrices"].append(
            {
                "lambda": str(lam),
                "r": text(r),
                "u": text(u),
                "u_inv": text(u_inv),
                "ell": text(ell),
                "h": text(h),
                "twists": [text(t) for t in twists(r)],
            }
        )
    path = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "oracle" / "sweedler.json"
    path.write_text(json.dumps(out, indent=2) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()

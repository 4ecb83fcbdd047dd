#![allow(dead_code)]

use cohastab::quiver::{DimVec, Quiver};
use cohastab::symalg::{rat, Monomial, Poly, Symbol};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn dv(x: &[usize]) -> DimVec {
    DimVec(x.to_vec())
}

pub fn p(text: &str) -> Poly {
    cohastab::symalg::parse_poly(text).unwrap()
}

pub fn var(s: Symbol) -> Poly {
    Poly::var(s)
}

/// Elementary symmetric polynomial `e_k` in `vars`.
pub fn elementary(vars: &[Symbol], k: usize) -> Poly {
    cohastab::symalg::subsets(vars.len(), k)
        .into_iter()
        .map(|set| set.iter().map(|&i| var(vars[i])).product::<Poly>())
        .sum()
}

pub fn chern_roots(vertex: usize, n: usize) -> Vec<Symbol> {
    (1..=n).map(|k| Symbol::s(vertex, k)).collect()
}

/// Small random polynomial in `a(i, 1..=w_i)` and `h`, possibly constant.
pub fn random_coefficient(rng: &mut ChaCha8Rng, w: &DimVec) -> Poly {
    let mut out = Poly::constant(rat(rng.gen_range(-2..=3)));
    if rng.gen_bool(0.5) {
        out = out + Poly::h().scale(&rat(rng.gen_range(-2..=2)));
    }
    for (i, &wi) in w.0.iter().enumerate() {
        if wi > 0 && rng.gen_bool(0.4) {
            let j = rng.gen_range(1..=wi);
            out = out + var(Symbol::a(i + 1, j)).scale(&rat(rng.gen_range(-2..=2)));
        }
    }
    out
}

/// Random polynomial symmetric in each Chern-root block of grade `(v, w)`.
pub fn random_symmetric(rng: &mut ChaCha8Rng, v: &DimVec, w: &DimVec) -> Poly {
    let mut out = random_coefficient(rng, w);
    for _ in 0..rng.gen_range(0..=2) {
        let mut term = random_coefficient(rng, w);
        for (i, &vi) in v.0.iter().enumerate() {
            if vi > 0 {
                let k = rng.gen_range(0..=vi);
                term = term * elementary(&chern_roots(i + 1, vi), k);
            }
        }
        out = out + term;
    }
    out
}

/// Random polynomial with no symmetry in the Chern roots.
pub fn random_plain(rng: &mut ChaCha8Rng, v: &DimVec, w: &DimVec) -> Poly {
    let mut out = random_coefficient(rng, w);
    for (i, &vi) in v.0.iter().enumerate() {
        for k in 1..=vi {
            if rng.gen_bool(0.5) {
                let e = rng.gen_range(1..=2);
                let m = Monomial::var(Symbol::s(i + 1, k));
                let mono = (0..e).fold(Monomial::one(), |acc, _| acc.mul(&m));
                out = out + Poly::term(rat(rng.gen_range(-2..=2)), mono);
            }
        }
    }
    out
}

pub fn random_dims(rng: &mut ChaCha8Rng, n: usize, max: usize) -> DimVec {
    DimVec((0..n).map(|_| rng.gen_range(0..=max)).collect())
}

pub fn quivers() -> Vec<(&'static str, Quiver)> {
    vec![("A1", Quiver::a1()), ("Jordan", Quiver::jordan()), ("A2", Quiver::a2())]
}

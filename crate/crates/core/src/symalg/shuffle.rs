//! Symmetrization over shuffles and the full-flag pushforward.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::poly::{Poly, Rational};
use super::ratfun::RatFun;
use super::symbol::Symbol;
use crate::error::{Error, Result};

/// Whether a polynomial is claimed symmetric inside each block or in the
/// whole per-vertex set of Chern roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    PerBlock,
    Full,
}

/// A polynomial together with the block structure of its Chern roots.
///
/// `blocks[i]` lists the sizes of the consecutive blocks of `s(i+1, ·)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockPoly {
    pub poly: Poly,
    pub blocks: Vec<Vec<usize>>,
    pub symmetry: Symmetry,
}

impl BlockPoly {
    pub fn new(poly: Poly, blocks: Vec<Vec<usize>>, symmetry: Symmetry) -> Result<BlockPoly> {
        let bp = BlockPoly {
            poly,
            blocks,
            symmetry,
        };
        if !bp.symmetry_holds() {
            return Err(Error::NotSymmetric(bp.poly.to_string()));
        }
        Ok(bp)
    }

    /// Fully symmetric polynomial with one block of size `dims[i]` per vertex.
    pub fn full(poly: Poly, dims: &[usize]) -> Result<BlockPoly> {
        BlockPoly::new(
            poly,
            dims.iter().map(|&d| vec![d]).collect(),
            Symmetry::Full,
        )
    }

    pub fn symmetry_holds(&self) -> bool {
        self.blocks.iter().enumerate().all(|(i, sizes)| {
            let total: usize = sizes.iter().sum();
            let groups: Vec<(usize, usize)> = match self.symmetry {
                Symmetry::Full => vec![(0, total)],
                Symmetry::PerBlock => {
                    let mut start = 0;
                    sizes
                        .iter()
                        .map(|&n| {
                            let g = (start, n);
                            start += n;
                            g
                        })
                        .collect()
                }
            };
            groups.into_iter().all(|(start, n)| {
                let vars: Vec<Symbol> = (start + 1..=start + n).map(|k| Symbol::s(i + 1, k)).collect();
                self.poly.is_symmetric_in(&vars)
            })
        })
    }
}

/// Per-vertex sizes `(first_i, second_i)` of two consecutive sub-blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleSplit {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

impl ShuffleSplit {
    pub fn new(first: Vec<usize>, second: Vec<usize>) -> ShuffleSplit {
        assert_eq!(first.len(), second.len(), "split sizes per vertex");
        ShuffleSplit { first, second }
    }

    pub fn totals(&self) -> Vec<usize> {
        self.first
            .iter()
            .zip(&self.second)
            .map(|(a, b)| a + b)
            .collect()
    }

    /// Number of shuffles, `Π binom(v_i, first_i)`.
    pub fn count(&self) -> u128 {
        self.first
            .iter()
            .zip(&self.second)
            .map(|(&a, &b)| binomial(a + b, a))
            .product()
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All permutations of `0..n` in lexicographic order, with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push((p.clone(), permutation_sign(&p)));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

pub fn permutation_sign(p: &[usize]) -> i64 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Cartesian product of per-vertex choices.
fn product<T: Clone>(per_vertex: &[Vec<T>]) -> Vec<Vec<T>> {
    per_vertex.iter().fold(vec![Vec::new()], |acc, choices| {
        acc.into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect()
    })
}

/// Renaming `s(i, k+1) ↦ s(i, images[i][k]+1)` for every vertex.
fn permute_chern(images: &[Vec<usize>]) -> impl Fn(Symbol) -> Symbol + Copy + '_ {
    move |s: Symbol| {
        if s.is_chern() {
            if let Some(img) = images.get(s.vertex() - 1) {
                if let Some(&t) = img.get(s.index() - 1) {
                    return s.with_index(t + 1);
                }
            }
        }
        s
    }
}

/// Sums rational functions over the lcm of their factored denominators.
fn sum_over_lcm(terms: Vec<RatFun>) -> RatFun {
    let mut lcm: BTreeMap<Poly, u32> = BTreeMap::new();
    for t in &terms {
        for (f, m) in t.denominator_factors() {
            let e = lcm.entry(f.clone()).or_default();
            *e = (*e).max(m);
        }
    }
    let num: Poly = terms
        .par_iter()
        .map(|t| {
            let own: BTreeMap<&Poly, u32> = t.denominator_factors().collect();
            let cof: Poly = lcm
                .iter()
                .map(|(f, &m)| f.pow(m - own.get(f).copied().unwrap_or(0)))
                .product();
            t.numerator() * &cof
        })
        .reduce(Poly::zero, |a, b| a + b);
    RatFun::from_factored(num, lcm).expect("denominator factors are nonzero")
}

fn check_block_symmetry(f: &RatFun, split: &ShuffleSplit) -> Result<()> {
    for (i, (&n1, &n2)) in split.first.iter().zip(&split.second).enumerate() {
        for (start, len) in [(0, n1), (n1, n2)] {
            for k in start + 1..start + len {
                let (x, y) = (Symbol::s(i + 1, k), Symbol::s(i + 1, k + 1));
                let swapped = f.rename(move |s| {
                    if s == x {
                        y
                    } else if s == y {
                        x
                    } else {
                        s
                    }
                });
                if !swapped.equals(f) {
                    return Err(Error::NotSymmetric(format!("{f} under {x} <-> {y}")));
                }
            }
        }
    }
    Ok(())
}

/// Sum of the images of `f` under the shuffles of two consecutive
/// sub-blocks per vertex, in lowest terms. `f` must be invariant under
/// permutations inside each sub-block.
pub fn shuffle_sum(f: &RatFun, split: &ShuffleSplit) -> Result<RatFun> {
    check_block_symmetry(f, split)?;
    if let Some(g) = over_cross_vandermonde(f, split) {
        return Ok(RatFun::from_poly(pushforward_by_divided_differences(g, split)));
    }
    shuffle_sum_by_terms(f, split)
}

/// When the denominator of `f` is exactly `Π_i Π_{a ≤ n1_i < b} (s(i,a) − s(i,b))`
/// up to a constant, returns the polynomial `g` with `f = g / Π (s(i,a) − s(i,b))`.
fn over_cross_vandermonde(f: &RatFun, split: &ShuffleSplit) -> Option<Poly> {
    let mut expected: BTreeMap<Poly, Rational> = BTreeMap::new();
    for (i, (&n1, &n2)) in split.first.iter().zip(&split.second).enumerate() {
        for a in 1..=n1 {
            for b in n1 + 1..=n1 + n2 {
                let d = &Poly::var(Symbol::s(i + 1, a)) - &Poly::var(Symbol::s(i + 1, b));
                let (monic, lc) = d.monic();
                expected.insert(monic, lc);
            }
        }
    }
    let mut seen = 0;
    for (p, m) in f.denominator_factors() {
        if m != 1 || !expected.contains_key(p) {
            return None;
        }
        seen += 1;
    }
    if seen != expected.len() {
        return None;
    }
    let scale: Rational = expected.values().product();
    Some(f.numerator().scale(&scale))
}

/// `Σ_{shuffles σ} σ(g / Π (s_a − s_b))` as the divided difference operator of
/// the longest shuffle, moving each first-block root past the second block.
fn pushforward_by_divided_differences(mut g: Poly, split: &ShuffleSplit) -> Poly {
    for (i, (&n1, &n2)) in split.first.iter().zip(&split.second).enumerate() {
        for a in (1..=n1).rev() {
            for j in a..a + n2 {
                g = g.divided_difference(Symbol::s(i + 1, j), Symbol::s(i + 1, j + 1));
            }
        }
    }
    g
}

fn shuffle_sum_by_terms(f: &RatFun, split: &ShuffleSplit) -> Result<RatFun> {
    let totals = split.totals();
    let per_vertex: Vec<Vec<Vec<usize>>> = split
        .first
        .iter()
        .zip(&totals)
        .map(|(&n1, &n)| {
            subsets(n, n1)
                .into_iter()
                .map(|chosen| {
                    let rest = (0..n).filter(|x| !chosen.contains(x));
                    chosen.iter().copied().chain(rest).collect()
                })
                .collect()
        })
        .collect();
    let shuffles = product(&per_vertex);
    let terms: Vec<RatFun> = shuffles
        .par_iter()
        .map(|images| f.rename(permute_chern(images)))
        .collect();
    Ok(sum_over_lcm(terms))
}

/// [`shuffle_sum`] for integrands whose symmetrization is a polynomial.
/// A sum that keeps a denominator is reported as [`Error::NotPolynomial`].
pub fn shuffle_symmetrize(f: &RatFun, split: &ShuffleSplit) -> Result<BlockPoly> {
    let sum = shuffle_sum(f, split)?;
    if !sum.is_polynomial() {
        return Err(Error::NotPolynomial {
            kernel: f.to_string(),
            remainder: sum.numerator().to_string(),
            factors: sum.denominator_factors().map(|(p, _)| p.to_string()).collect(),
        });
    }
    Ok(BlockPoly {
        poly: sum.into_poly().expect("checked"),
        blocks: split.totals().iter().map(|&n| vec![n]).collect(),
        symmetry: Symmetry::Full,
    })
}

/// `Π_i Π_{α<β} (s(i,α) − s(i,β))`.
pub fn vandermonde(dims: &[usize]) -> Poly {
    let mut out = Poly::one();
    for (i, &n) in dims.iter().enumerate() {
        for a in 1..=n {
            for b in a + 1..=n {
                out = out * (Poly::var(Symbol::s(i + 1, a)) - Poly::var(Symbol::s(i + 1, b)));
            }
        }
    }
    out
}

/// Pushforward along the full flag fibration: `Σ_σ σ·(f / Π_{α<β}(s_α − s_β))`
/// over `Π_i S_{v_i}`.
pub fn flag_pushforward(f: &Poly, dims: &[usize]) -> Result<BlockPoly> {
    let per_vertex: Vec<Vec<(Vec<usize>, i64)>> = dims.iter().map(|&n| permutations(n)).collect();
    let antisym: Poly = product(&per_vertex)
        .par_iter()
        .map(|choice| {
            let sign: i64 = choice.iter().map(|(_, s)| s).product();
            let images: Vec<Vec<usize>> = choice.iter().map(|(p, _)| p.clone()).collect();
            f.rename(permute_chern(&images)).scale(&super::poly::rat(sign))
        })
        .reduce(Poly::zero, |a, b| a + b);
    let delta = vandermonde(dims);
    let poly = antisym.div_exact(&delta).ok_or_else(|| Error::NotPolynomial {
        kernel: f.to_string(),
        remainder: antisym.to_string(),
        factors: vec![delta.to_string()],
    })?;
    Ok(BlockPoly {
        poly,
        blocks: dims.iter().map(|&n| vec![n]).collect(),
        symmetry: Symmetry::Full,
    })
}

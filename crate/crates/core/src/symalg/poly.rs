use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::symbol::Symbol;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A monomial: sorted `(symbol, exponent)` pairs with nonzero exponents.
///
/// `Ord` is graded-lex over the symbol order: higher total degree is larger,
/// ties go to the monomial with the larger exponent on the earliest symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Symbol, u32); 6]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(sym: Symbol) -> Monomial {
        Monomial(smallvec::smallvec![(sym, 1)])
    }

    /// Builds a monomial from unsorted factors, merging repeats.
    pub fn from_factors<I: IntoIterator<Item = (Symbol, u32)>>(factors: I) -> Monomial {
        let mut map: BTreeMap<Symbol, u32> = BTreeMap::new();
        for (s, e) in factors {
            *map.entry(s).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_where(&self, pred: impl Fn(&Symbol) -> bool) -> u32 {
        self.0.iter().filter(|(s, _)| pred(s)).map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, sym: &Symbol) -> u32 {
        self.0
            .iter()
            .find(|(s, _)| s == sym)
            .map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        for &(s, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < s {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == s {
                let d = other.0[j].1;
                j += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((s, e - d)),
                }
            } else {
                out.push((s, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (x, y) in self.0.iter().zip(other.0.iter()) {
                if x.0 != y.0 {
                    // The one that mentions the earlier symbol has the larger exponent there.
                    return if x.0 < y.0 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
                if x.1 != y.1 {
                    return x.1.cmp(&y.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a sorted map keyed by graded-lex order, so the leading
/// term is the last entry and equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(rat(n))
    }

    pub fn var(sym: Symbol) -> Poly {
        Poly::term(rat(1), Monomial::var(sym))
    }

    pub fn h() -> Poly {
        Poly::var(Symbol::H)
    }

    pub fn term(c: Rational, m: Monomial) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Poly {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in it {
            add_term(&mut terms, m, c);
        }
        Poly { terms }
    }

    /// Integer linear form `Σ c·sym + constant`.
    pub fn linear(coeffs: &[(Symbol, i64)], constant: i64) -> Poly {
        let mut p = Poly::int(constant);
        for &(s, c) in coeffs {
            p = &p + &Poly::term(rat(c), Monomial::var(s));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.leading().map(|(_, c)| c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest degree in the symbols selected by `pred`.
    pub fn degree_where(&self, pred: impl Fn(&Symbol) -> bool + Copy) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_where(pred)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(s, _)| s))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .collect(),
        }
    }

    /// Multiplies by the monic version of itself; returns `(monic, leading coefficient)`.
    pub fn monic(&self) -> (Poly, Rational) {
        match self.leading_coeff() {
            None => (Poly::zero(), rat(1)),
            Some(lc) => {
                let lc = lc.clone();
                (self.scale(&lc.recip()), lc)
            }
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, x)| (n.mul(m), x * c))
                .collect(),
        }
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (lm, lc_inv) = (lm.clone(), lc.recip());
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back() {
            let qm = m.checked_div(&lm)?;
            let qc = c * &lc_inv;
            for (dm, dc) in &divisor.terms {
                add_term(&mut rem, dm.mul(&qm), -(dc * &qc));
            }
            add_term(&mut quot, qm, qc);
        }
        Some(Poly { terms: quot })
    }

    /// Renames symbols. The map must be injective on the symbols present,
    /// otherwise colliding terms are merged.
    pub fn rename(&self, f: impl Fn(Symbol) -> Symbol) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial::from_factors(m.factors().iter().map(|&(s, e)| (f(s), e))),
                c.clone(),
            )
        }))
    }

    /// Simultaneous substitution of the symbols in `assignment`; other symbols stay.
    pub fn substitute(&self, assignment: &HashMap<Symbol, Poly>) -> Poly {
        let mut powers: HashMap<(Symbol, u32), Poly> = HashMap::new();
        let mut out: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut value = Poly::constant(c.clone());
            for &(s, e) in m.factors() {
                match assignment.get(&s) {
                    Some(target) => {
                        let pw = powers.entry((s, e)).or_insert_with(|| target.pow(e));
                        value = &value * pw;
                    }
                    None => kept.push((s, e)),
                }
            }
            let kept = Monomial::from_factors(kept);
            for (vm, vc) in value.terms {
                add_term(&mut out, vm.mul(&kept), vc);
            }
        }
        Poly { terms: out }
    }

    /// Exchanges two symbols.
    pub fn swap(&self, x: Symbol, y: Symbol) -> Poly {
        self.rename(|s| {
            if s == x {
                y
            } else if s == y {
                x
            } else {
                s
            }
        })
    }

    /// Invariant under every permutation of `vars` (checked on adjacent transpositions).
    /// Divided difference `(f − f|_{x↔y}) / (x − y)`, computed monomial by monomial.
    pub fn divided_difference(&self, x: Symbol, y: Symbol) -> Poly {
        let mut out: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (p, q) = (m.exponent(&x), m.exponent(&y));
            if p == q {
                continue;
            }
            let (low, gap, c) = if p > q { (q, p - q, c.clone()) } else { (p, q - p, -c.clone()) };
            let rest: SmallVec<[(Symbol, u32); 6]> =
                m.factors().iter().filter(|(s, _)| *s != x && *s != y).copied().collect();
            for k in 0..gap {
                let (ex, ey) = (low + k, low + gap - 1 - k);
                let mono = Monomial::from_factors(
                    rest.iter().copied().chain([(x, ex), (y, ey)]).filter(|&(_, e)| e > 0),
                );
                add_term(&mut out, mono, c.clone());
            }
        }
        Poly { terms: out }
    }

    pub fn is_symmetric_in(&self, vars: &[Symbol]) -> bool {
        vars.windows(2).all(|w| self.swap(w[0], w[1]) == *self)
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_negative_leading(&self) -> bool {
        self.leading_coeff().is_some_and(Signed::is_negative)
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Poly { terms }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            add_term(&mut terms, m.clone(), -c.clone());
        }
        Poly { terms }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return rhs.mul_term(m, c);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = rhs.terms.iter().next().unwrap();
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len() / 2 + 1);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let c = c1 * c2;
                match acc.entry(m1.mul(m2)) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                    }
                }
            }
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |a, b| a * b)
    }
}

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use super::poly::{Poly, Rational};
use super::symbol::Symbol;
use crate::error::{Error, Result};

/// Quotient of two polynomials with the denominator kept as a product of
/// monic factors.
///
/// Factors are whatever the producer supplied (Euler classes give linear
/// forms); they are not assumed coprime. After every operation each factor
/// is cancelled against the numerator as far as exact division allows, so a
/// result that is a polynomial always ends up with an empty denominator.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: Poly,
    den: BTreeMap<Poly, u32>,
}

impl RatFun {
    pub fn from_poly(p: Poly) -> RatFun {
        RatFun {
            num: p,
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> RatFun {
        RatFun::from_poly(Poly::one())
    }

    pub fn zero() -> RatFun {
        RatFun::from_poly(Poly::zero())
    }

    /// `num / den`, reduced.
    pub fn new(num: Poly, den: Poly) -> Result<RatFun> {
        RatFun::from_factored(num, [(den, 1)])
    }

    /// `num / Π factor^mult`, reduced.
    pub fn from_factored<I>(num: Poly, factors: I) -> Result<RatFun>
    where
        I: IntoIterator<Item = (Poly, u32)>,
    {
        let mut out = RatFun {
            num,
            den: BTreeMap::new(),
        };
        for (f, m) in factors {
            if f.is_zero() {
                return Err(Error::DivisionByZero);
            }
            out.push_factor(f, m);
        }
        out.reduce();
        Ok(out)
    }

    fn push_factor(&mut self, f: Poly, mult: u32) {
        if mult == 0 {
            return;
        }
        let (monic, lc) = f.monic();
        let scale = lc.recip();
        for _ in 0..mult {
            self.num = self.num.scale(&scale);
        }
        if monic.is_one() {
            return;
        }
        *self.den.entry(monic).or_default() += mult;
    }

    /// Cancels denominator factors that divide the numerator.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<Poly> = self.den.keys().cloned().collect();
        for f in factors {
            loop {
                let m = self.den.get_mut(&f).unwrap();
                if *m == 0 {
                    break;
                }
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, m| *m > 0);
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// Expanded denominator (monic).
    pub fn denominator(&self) -> Poly {
        self.den.iter().map(|(f, &m)| f.pow(m)).product()
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.den.iter().map(|(f, &m)| (f, m))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn into_poly(self) -> Option<Poly> {
        self.den.is_empty().then_some(self.num)
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFun {
        let mut out = RatFun {
            num: &self.num * p,
            den: self.den.clone(),
        };
        out.reduce();
        out
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        RatFun {
            num: self.num.scale(c),
            den: if c.is_zero() {
                BTreeMap::new()
            } else {
                self.den.clone()
            },
        }
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &RatFun) -> RatFun {
        let mut out = RatFun {
            num: &self.num * &rhs.num,
            den: self.den.clone(),
        };
        for (f, m) in &rhs.den {
            *out.den.entry(f.clone()).or_default() += m;
        }
        out.reduce();
        out
    }

    pub fn div(&self, rhs: &RatFun) -> Result<RatFun> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = RatFun {
            num: self.num.clone(),
            den: self.den.clone(),
        };
        for (f, &m) in &rhs.den {
            for _ in 0..m {
                out.num = &out.num * f;
            }
        }
        out.push_factor(rhs.num.clone(), 1);
        out.reduce();
        Ok(out)
    }

    pub fn add(&self, rhs: &RatFun) -> RatFun {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &RatFun) -> RatFun {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &RatFun, negate: bool) -> RatFun {
        let mut lcm = self.den.clone();
        for (f, &m) in &rhs.den {
            let e = lcm.entry(f.clone()).or_default();
            *e = (*e).max(m);
        }
        let lhs_num = &self.num * &cofactor(&lcm, &self.den);
        let mut rhs_num = &rhs.num * &cofactor(&lcm, &rhs.den);
        if negate {
            rhs_num = -rhs_num;
        }
        let mut out = RatFun {
            num: lhs_num + rhs_num,
            den: lcm,
        };
        out.reduce();
        out
    }

    /// Applies a symbol renaming to numerator and every factor.
    pub fn rename(&self, f: impl Fn(Symbol) -> Symbol + Copy) -> RatFun {
        let mut out = RatFun::from_poly(self.num.rename(f));
        for (p, &m) in &self.den {
            out.push_factor(p.rename(f), m);
        }
        out.reduce();
        out
    }

    /// Simultaneous substitution; fails if a denominator factor vanishes.
    pub fn substitute(&self, assignment: &HashMap<Symbol, Poly>) -> Result<RatFun> {
        let mut out = RatFun::from_poly(self.num.substitute(assignment));
        for (p, &m) in &self.den {
            let q = p.substitute(assignment);
            if q.is_zero() {
                return Err(Error::DenominatorVanishes(p.to_string()));
            }
            out.push_factor(q, m);
        }
        out.reduce();
        Ok(out)
    }

    /// Splits non-linear denominator factors into weight-shaped linear factors
    /// `x − y + c·h`, `x + c·h` and `h` where trial division succeeds, then
    /// cancels again. Factors that do not split are kept whole.
    pub fn split_linear_factors(&self) -> RatFun {
        let mut out = RatFun::from_poly(self.num.clone());
        for (f, &m) in &self.den {
            for (g, k) in split_linear(f) {
                out.push_factor(g, k * m);
            }
        }
        out.reduce();
        out
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, other: &RatFun) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let mut lcm = self.den.clone();
        for (f, &m) in &other.den {
            let e = lcm.entry(f.clone()).or_default();
            *e = (*e).max(m);
        }
        &self.num * &cofactor(&lcm, &self.den) == &other.num * &cofactor(&lcm, &other.den)
    }
}

fn split_linear(f: &Poly) -> Vec<(Poly, u32)> {
    if f.degree().unwrap_or(0) <= 1 {
        return vec![(f.clone(), 1)];
    }
    let syms: Vec<Symbol> = f.symbols().into_iter().filter(|s| !s.is_hbar()).collect();
    let h = Poly::h();
    let mut candidates = vec![h.clone()];
    for (i, &x) in syms.iter().enumerate() {
        for c in -3i64..=3 {
            let shift = h.scale(&super::poly::rat(c));
            if c != 0 {
                candidates.push(&Poly::var(x) + &shift);
            }
            for &y in &syms[i + 1..] {
                candidates.push(&(&Poly::var(x) - &Poly::var(y)) + &shift);
            }
        }
    }
    let mut rest = f.clone();
    let mut found: Vec<(Poly, u32)> = Vec::new();
    for c in candidates {
        let mut k = 0;
        while rest.degree().unwrap_or(0) > 0 {
            match rest.div_exact(&c) {
                Some(q) => {
                    rest = q;
                    k += 1;
                }
                None => break,
            }
        }
        if k > 0 {
            found.push((c, k));
        }
    }
    if !rest.is_one() {
        found.push((rest, 1));
    }
    found
}

/// `lcm / den` as an expanded polynomial.
fn cofactor(lcm: &BTreeMap<Poly, u32>, den: &BTreeMap<Poly, u32>) -> Poly {
    lcm.iter()
        .map(|(f, &m)| f.pow(m - den.get(f).copied().unwrap_or(0)))
        .product()
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> RatFun {
        RatFun::from_poly(p)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for (i, (p, m)) in self.den.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "({p})")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(j: usize) -> Poly {
        Poly::var(Symbol::s(1, j))
    }

    #[test]
    fn splits_products_of_weights() {
        let u = &s(1) - &s(2);
        let d = &(&u - &Poly::h()) * &u;
        let f = RatFun::new(-(&u * &u), d).unwrap().split_linear_factors();
        assert_eq!(f.denominator_factors().count(), 1);
        assert_eq!(f.numerator().degree(), Some(1));
        let odd = &s(1) * &s(1) + Poly::h() * Poly::h();
        let g = RatFun::new(Poly::one(), odd.clone()).unwrap().split_linear_factors();
        assert_eq!(g.denominator(), odd);
    }

    #[test]
    fn division_returns_polynomial_when_exact() {
        let n = Poly::h().pow(2) - (&s(1) - &s(2)).pow(2);
        let d = &s(1) - &s(2) + Poly::h();
        let q = RatFun::new(n, d).unwrap();
        assert_eq!(q.as_poly(), Some(&(Poly::h() - s(1) + s(2))));
    }

    #[test]
    fn self_quotient_is_one() {
        let f = &s(1) * &s(2) + Poly::h();
        let r = RatFun::from_poly(f.clone())
            .div(&RatFun::from_poly(f))
            .unwrap();
        assert_eq!(r.as_poly(), Some(&Poly::one()));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(
            RatFun::new(Poly::one(), Poly::zero()),
            Err(Error::DivisionByZero)
        ));
        assert!(RatFun::one().div(&RatFun::zero()).is_err());
    }

    #[test]
    fn opposite_fractions_cancel() {
        let a = RatFun::new(Poly::one(), &s(1) - &s(2)).unwrap();
        let b = RatFun::new(Poly::one(), &s(2) - &s(1)).unwrap();
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn denominator_is_monic() {
        let r = RatFun::new(Poly::one(), Poly::int(-3) * s(1)).unwrap();
        assert_eq!(r.denominator(), s(1));
        assert_eq!(r.numerator(), &Poly::constant(Rational::new((-1).into(), 3.into())));
    }

    #[test]
    fn substitution_degenerate_cases() {
        let f = RatFun::new(&s(1) - &s(2), &s(1) + &s(2)).unwrap();
        let mut asg = HashMap::new();
        asg.insert(Symbol::s(1, 1), s(2));
        assert!(f.substitute(&asg).unwrap().is_zero());
        asg.insert(Symbol::s(1, 1), -s(2));
        assert!(matches!(
            f.substitute(&asg),
            Err(Error::DenominatorVanishes(_))
        ));
    }
}

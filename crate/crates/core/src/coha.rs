//! The framed cohomological Hall algebra in its shuffle presentation.
//!
//! An element of grade `(v, w)` is a polynomial in `a(i, 1..=w_i)`,
//! `s(i, 1..=v_i)` and `h`, symmetric in each `s(i, ·)`. In a product the
//! second factor is relabeled onto the second sub-blocks: its `s(i, α)`
//! becomes `s(i, α + v1_i)` and its `a(i, k)` becomes `a(i, k + w1_i)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{
    class_gauge, class_trep, euler, euler_poly, grade_part, normal_split, DimVec, GradeSplit,
    KClass, Quiver,
};
use crate::symalg::{flag_pushforward, shuffle_symmetrize, Poly, ShuffleSplit, Symbol};

#[derive(Clone, Debug, PartialEq)]
pub struct CohaElement {
    pub quiver: Quiver,
    pub v: DimVec,
    pub w: DimVec,
    pub poly: Poly,
}

/// Serialized form of an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub quiver_hash: String,
    pub v: DimVec,
    pub w: DimVec,
    pub poly: String,
}

/// Checks that `poly` only mentions the symbols of grade `(v, w)`.
pub(crate) fn check_universe(poly: &Poly, v: &DimVec, w: &DimVec) -> Result<()> {
    for s in poly.symbols() {
        let ok = s.is_hbar()
            || (s.vertex() <= v.len()
                && if s.is_chern() {
                    s.index() <= v[s.vertex() - 1]
                } else {
                    s.index() <= w[s.vertex() - 1]
                });
        if !ok {
            return Err(Error::Dimension(format!(
                "symbol {s} does not belong to grade v={v}, w={w}"
            )));
        }
    }
    Ok(())
}

pub(crate) fn chern_block(vertex: usize, n: usize) -> Vec<Symbol> {
    (1..=n).map(|k| Symbol::s(vertex, k)).collect()
}

/// Offsets a Chern root by `v1` and a framing parameter by `w1`.
pub fn shift_symbol(s: Symbol, v1: &DimVec, w1: &DimVec) -> Symbol {
    if s.is_chern() {
        s.with_index(s.index() + v1[s.vertex() - 1])
    } else if s.is_framing() {
        s.with_index(s.index() + w1[s.vertex() - 1])
    } else {
        s
    }
}

/// Offsets the Chern roots by `v1` and the framing parameters by `w1`.
pub fn shift_labels(p: &Poly, v1: &DimVec, w1: &DimVec) -> Poly {
    p.rename(|s| shift_symbol(s, v1, w1))
}

impl CohaElement {
    pub fn new(quiver: &Quiver, v: DimVec, w: DimVec, poly: Poly) -> Result<CohaElement> {
        quiver.check_dims(&v)?;
        quiver.check_dims(&w)?;
        check_universe(&poly, &v, &w)?;
        for i in 0..v.len() {
            if !poly.is_symmetric_in(&chern_block(i + 1, v[i])) {
                return Err(Error::NotSymmetric(format!(
                    "{poly} in the Chern roots of vertex {}",
                    i + 1
                )));
            }
        }
        Ok(CohaElement {
            quiver: quiver.clone(),
            v,
            w,
            poly,
        })
    }

    pub fn unit(quiver: &Quiver) -> CohaElement {
        let n = quiver.num_vertices();
        CohaElement {
            quiver: quiver.clone(),
            v: DimVec::zero(n),
            w: DimVec::zero(n),
            poly: Poly::one(),
        }
    }

    pub fn record(&self) -> ElementRecord {
        ElementRecord {
            quiver_hash: self.quiver.hash(),
            v: self.v.clone(),
            w: self.w.clone(),
            poly: self.poly.to_string(),
        }
    }
}

fn product_split(f1: &CohaElement, f2: &CohaElement) -> Result<GradeSplit> {
    if f1.quiver != f2.quiver {
        return Err(Error::Invalid("factors live on different quivers".into()));
    }
    Ok(GradeSplit::new(
        f1.v.clone(),
        f2.v.clone(),
        f1.w.clone(),
        f2.w.clone(),
    ))
}

fn shuffle_product(f1: &CohaElement, f2: &CohaElement, kernel: &KClass, split: &GradeSplit) -> Result<CohaElement> {
    let integrand = euler(kernel)?.mul_poly(&(&f1.poly * &shift_labels(&f2.poly, &f1.v, &f1.w)));
    let shuffle = ShuffleSplit::new(split.v1.0.clone(), split.v2.0.clone());
    let poly = shuffle_symmetrize(&integrand, &shuffle)?.poly;
    Ok(CohaElement {
        quiver: f1.quiver.clone(),
        v: split.v(),
        w: split.w(),
        poly,
    })
}

/// `m(f1, f2) = Shuffle( e(T*Rep[−1]) f1 f2 / e(𝔤[−1]) )`.
pub fn m(f1: &CohaElement, f2: &CohaElement) -> Result<CohaElement> {
    let split = product_split(f1, f2)?;
    let kernel = normal_split(&f1.quiver, &split)?.stack_minus;
    shuffle_product(f1, f2, &kernel, &split)
}

/// `m_τ(f1, f2) = Shuffle( e(T*Rep[−1]) e(h𝔤[1]) f1 f2 / e(𝔤[−1]) )`.
pub fn m_tau(f1: &CohaElement, f2: &CohaElement) -> Result<CohaElement> {
    let split = product_split(f1, f2)?;
    let q = &f1.quiver;
    let kernel = normal_split(q, &split)?
        .stack_minus
        .plus(&grade_part(&class_gauge(q, &split.v(), 1)?, &split, 1)?);
    shuffle_product(f1, f2, &kernel, &split)
}

/// An element of the abelianized algebra: no symmetry is required.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelianElement {
    pub quiver: Quiver,
    pub v: DimVec,
    pub w: DimVec,
    pub poly: Poly,
}

impl AbelianElement {
    pub fn new(quiver: &Quiver, v: DimVec, w: DimVec, poly: Poly) -> Result<AbelianElement> {
        quiver.check_dims(&v)?;
        quiver.check_dims(&w)?;
        check_universe(&poly, &v, &w)?;
        Ok(AbelianElement {
            quiver: quiver.clone(),
            v,
            w,
            poly,
        })
    }

    pub fn unit(quiver: &Quiver) -> AbelianElement {
        let n = quiver.num_vertices();
        AbelianElement {
            quiver: quiver.clone(),
            v: DimVec::zero(n),
            w: DimVec::zero(n),
            poly: Poly::one(),
        }
    }

    /// Flag pushforward `q_*` to the symmetric algebra.
    pub fn pushforward(&self) -> Result<CohaElement> {
        let poly = flag_pushforward(&self.poly, self.v.as_slice())?.poly;
        Ok(CohaElement {
            quiver: self.quiver.clone(),
            v: self.v.clone(),
            w: self.w.clone(),
            poly,
        })
    }
}

fn abelian_product(
    f1: &AbelianElement,
    f2: &AbelianElement,
    include_h_minus: bool,
) -> Result<AbelianElement> {
    if f1.quiver != f2.quiver {
        return Err(Error::Invalid("factors live on different quivers".into()));
    }
    let q = &f1.quiver;
    let split = GradeSplit::new(f1.v.clone(), f2.v.clone(), f1.w.clone(), f2.w.clone());
    let (v, w) = (split.v(), split.w());
    let hg = class_gauge(q, &v, 1)?;
    let mut kernel = grade_part(&class_trep(q, &v, &w)?, &split, -1)?.plus(&grade_part(&hg, &split, 1)?);
    if include_h_minus {
        kernel = kernel.plus(&grade_part(&hg, &split, -1)?);
    }
    let poly = euler_poly(&kernel)? * &f1.poly * shift_labels(&f2.poly, &f1.v, &f1.w);
    Ok(AbelianElement {
        quiver: q.clone(),
        v,
        w,
        poly,
    })
}

/// `m_ab,τ(f1, f2) = e(T*Rep[−1]) e(h𝔤[−1]) e(h𝔤[1]) f1 f2`.
pub fn m_ab_tau(f1: &AbelianElement, f2: &AbelianElement) -> Result<AbelianElement> {
    abelian_product(f1, f2, true)
}

/// The Borel-level product `e(T*Rep[−1]) e(h𝔤[1]) f1 f2` through which
/// `m_ab,τ` factors; it intertwines `m_τ` with the flag pushforward.
pub fn m_ab_tau_borel(f1: &AbelianElement, f2: &AbelianElement) -> Result<AbelianElement> {
    abelian_product(f1, f2, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::parse_poly;

    fn dv(x: &[usize]) -> DimVec {
        DimVec(x.to_vec())
    }

    fn one_at(q: &Quiver, v: usize, w: usize) -> CohaElement {
        CohaElement::new(q, dv(&[v]), dv(&[w]), Poly::one()).unwrap()
    }

    #[test]
    fn unit_is_degree_zero_one() {
        let u = CohaElement::unit(&Quiver::a1());
        assert_eq!((u.v.total(), u.w.total()), (0, 0));
        assert!(u.poly.is_one());
    }

    #[test]
    fn untwisted_examples() {
        let a1 = Quiver::a1();
        let x = one_at(&a1, 1, 0);
        assert!(m(&x, &x).unwrap().poly.is_zero());

        let j = Quiver::jordan();
        let y = one_at(&j, 1, 0);
        assert_eq!(m(&y, &y).unwrap().poly, parse_poly("2*h").unwrap());
    }

    #[test]
    fn twisted_examples() {
        let j = Quiver::jordan();
        let y = one_at(&j, 1, 0);
        assert_eq!(
            m_tau(&y, &y).unwrap().poly,
            parse_poly("2*(h^2 - (s(1,1)-s(1,2))^2)").unwrap()
        );
        let x = one_at(&Quiver::a1(), 1, 0);
        assert_eq!(m_tau(&x, &x).unwrap().poly, Poly::int(-2));
    }

    #[test]
    fn unit_laws() {
        let q = Quiver::jordan();
        let f = CohaElement::new(&q, dv(&[2]), dv(&[1]), parse_poly("s(1,1)*s(1,2) + a(1,1)").unwrap()).unwrap();
        let u = CohaElement::unit(&q);
        assert_eq!(m(&u, &f).unwrap(), f);
        assert_eq!(m(&f, &u).unwrap(), f);
        assert_eq!(m_tau(&f, &u).unwrap(), f);
        assert_eq!(m_tau(&u, &f).unwrap(), f);
    }

    #[test]
    fn abelian_examples() {
        let a1 = Quiver::a1();
        let x = AbelianElement::new(&a1, dv(&[1]), dv(&[0]), Poly::one()).unwrap();
        assert_eq!(
            m_ab_tau(&x, &x).unwrap().poly,
            parse_poly("h^2 - (s(1,1)-s(1,2))^2").unwrap()
        );
        let j = Quiver::jordan();
        let y = AbelianElement::new(&j, dv(&[1]), dv(&[0]), Poly::one()).unwrap();
        assert_eq!(
            m_ab_tau(&y, &y).unwrap().poly,
            parse_poly("(s(1,1)-s(1,2))*(s(1,1)-s(1,2)+h)^2*(s(1,2)-s(1,1)+h)").unwrap()
        );
        assert_eq!(m_ab_tau(&y, &AbelianElement::unit(&j)).unwrap(), y);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        let q = Quiver::a1();
        assert!(matches!(
            CohaElement::new(&q, dv(&[2]), dv(&[0]), parse_poly("s(1,1)").unwrap()),
            Err(Error::NotSymmetric(_))
        ));
        assert!(matches!(
            CohaElement::new(&q, dv(&[1]), dv(&[0]), parse_poly("a(1,1)").unwrap()),
            Err(Error::Dimension(_))
        ));
        let other = one_at(&Quiver::jordan(), 1, 0);
        assert!(m(&one_at(&q, 1, 0), &other).is_err());
    }
}

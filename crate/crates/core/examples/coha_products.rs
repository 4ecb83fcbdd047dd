//! Products in the framed cohomological Hall algebra and its abelianization.

use cohastab::coha::{m, m_ab_tau_borel, m_tau, AbelianElement, CohaElement};
use cohastab::quiver::{DimVec, Quiver};
use cohastab::symalg::parse_poly;

fn element(q: &Quiver, text: &str, v: usize, w: usize) -> CohaElement {
    CohaElement::new(q, DimVec(vec![v]), DimVec(vec![w]), parse_poly(text).unwrap()).unwrap()
}

fn main() -> cohastab::error::Result<()> {
    let jordan = Quiver::jordan();
    let x = element(&jordan, "1", 1, 0);
    println!("Jordan: 1 * 1       = {}", m(&x, &x)?.poly);
    println!("Jordan: 1 *_tau 1   = {}", m_tau(&x, &x)?.poly);

    let a1 = Quiver::a1();
    let f1 = element(&a1, "s(1,1)", 1, 1);
    let f2 = element(&a1, "1", 1, 1);
    let prod = m_tau(&f1, &f2)?;
    println!("A1: s *_tau 1 in grade v={}, w={}:\n  {}", prod.v, prod.w, prod.poly);

    // The twisted product factors through the abelianized one.
    let g1 = AbelianElement::new(&a1, DimVec(vec![1]), DimVec(vec![1]), parse_poly("s(1,1)")?)?;
    let g2 = AbelianElement::new(&a1, DimVec(vec![1]), DimVec(vec![1]), parse_poly("1")?)?;
    let via_flags = m_ab_tau_borel(&g1, &g2)?.pushforward()?;
    println!("pushforward agrees: {}", via_flags.poly == prod.poly);
    Ok(())
}

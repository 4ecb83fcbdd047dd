//! Stable envelopes from the shuffle formula.
//!
//! Prints the envelopes of `T*P^1` in both chambers, the weight functions of
//! `T*P^{n-1}` and checks the product identity
//! `e(h g_v) · stab_product(γ1, γ2) = m_τ(ψ γ1, ψ γ2)` on one pair.

use cohastab::coha::{m_tau, CohaElement};
use cohastab::quiver::{class_gauge, euler_poly, DimVec, Quiver};
use cohastab::stab::{psi, stab_product, stab_psi, Chamber, Decomposition, FixedComponent, NakaClass};
use cohastab::symalg::{parse_poly, RatFun};

fn main() -> cohastab::error::Result<()> {
    let q = Quiver::a1();
    for word in [[1, 2], [2, 1]] {
        let chamber = Chamber::from_word(&word)?;
        for slots in [[1, 0], [0, 1]] {
            let f = FixedComponent::with_unit_leaves(Decomposition::unit_framings(&slots)?);
            println!("T*P1 {chamber} {slots:?}: {}", stab_psi(&q, &f, &chamber)?);
        }
    }

    let n = 4;
    for slot in 0..n {
        let mut slots = vec![0; n];
        slots[slot] = 1;
        let f = FixedComponent::with_unit_leaves(Decomposition::unit_framings(&slots)?);
        println!("W_{} = {}", slot + 1, stab_psi(&q, &f, &Chamber::identity(n))?);
    }

    let g1 = CohaElement::new(&q, DimVec(vec![1]), DimVec(vec![1]), parse_poly("s(1,1) + a(1,1)")?)?;
    let g2 = CohaElement::new(&q, DimVec(vec![1]), DimVec(vec![2]), parse_poly("s(1,1)")?)?;
    let lhs = stab_product(&NakaClass::from(g1.clone()), &NakaClass::from(g2.clone()))?;
    let factor = euler_poly(&class_gauge(&q, &lhs.v, 1)?)?;
    let rhs = m_tau(&psi(&g1)?, &psi(&g2)?)?;
    println!(
        "product identity holds: {}",
        lhs.class.mul(&RatFun::from_poly(factor)) == RatFun::from_poly(rhs.poly)
    );
    Ok(())
}

//! Weight classes of framed representations and their grade splits.

use cohastab::quiver::{class_gauge, class_trep, euler, normal_split, tangent_naka, DimVec, GradeSplit, Quiver};

fn main() -> cohastab::error::Result<()> {
    let q = Quiver::from_json(r#"{"vertices": ["1", "2"], "arrows": [["1", "2"]]}"#)?;
    let (v, w) = (DimVec(vec![1, 1]), DimVec(vec![1, 0]));
    println!("quiver {} (hash {})", q.to_json(), &q.hash()[..12]);
    println!("T*Rep(v, w) = {}", class_trep(&q, &v, &w)?);
    println!("h g_v       = {}", class_gauge(&q, &v, 1)?);
    println!("T naka      = {}", tangent_naka(&q, &v, &w)?);

    // T*P^1 as a fixed locus of two framing slots.
    let a1 = Quiver::a1();
    let split = GradeSplit::new(DimVec(vec![1]), DimVec(vec![0]), DimVec(vec![1]), DimVec(vec![1]));
    let parts = normal_split(&a1, &split)?;
    println!("N[-1] = {}   e = {}", parts.n_minus, euler(&parts.n_minus)?);
    println!("N[+1] = {}   e = {}", parts.n_plus, euler(&parts.n_plus)?);
    Ok(())
}

//! Canonical text, rational functions, shuffles and the flag pushforward.
//!
//! ```text
//! cargo run --example polynomials
//! ```

use cohastab::symalg::{
    flag_pushforward, parse_poly, parse_ratfun, poly_arith, shuffle_symmetrize, ArithOp, ShuffleSplit,
};

fn main() -> cohastab::error::Result<()> {
    let p = parse_poly("s(1,1) - a(1,2) + h")?;
    println!("canonical form:   {p}");

    let num = parse_ratfun("h^2 - (s(1,1) - s(1,2))^2")?;
    let den = parse_ratfun("s(1,1) - s(1,2) + h")?;
    println!("exact quotient:   {}", poly_arith(&num, ArithOp::Div, &den)?);

    let kernel = parse_ratfun("(s(1,1) + h)/(s(1,2) - s(1,1))")?;
    let sym = shuffle_symmetrize(&kernel, &ShuffleSplit::new(vec![1], vec![1]))?;
    println!("shuffle of (s1 + h)/(s2 - s1): {}", sym.poly);

    for exponents in [[1, 0], [2, 0], [3, 1]] {
        let f = parse_poly(&format!("s(1,1)^{} * s(1,2)^{}", exponents[0], exponents[1]))?;
        let pushed = flag_pushforward(&f, &[2])?;
        println!("q_*(s1^{} s2^{}) = {}", exponents[0], exponents[1], pushed.poly);
    }
    Ok(())
}

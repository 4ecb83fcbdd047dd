//! Fixed points of T*Gr(2, 4), restriction tables and the axiom report.

use cohastab::fixloc::{check_restrictions, enumerate_fixed_points, envelope_restrictions, RestrictionTable};
use cohastab::quiver::{DimVec, Quiver};
use cohastab::stab::{Chamber, Decomposition};

fn main() -> cohastab::error::Result<()> {
    let q = Quiver::a1();
    let dec = Decomposition::unit_framings(&[0; 4])?;
    let mut all_pass = true;
    for chamber in Chamber::all(4) {
        let table = enumerate_fixed_points(&q, &DimVec(vec![2]), &dec, &chamber)?;
        let rows = envelope_restrictions(&q, &table, &chamber)?;
        let report = check_restrictions(&q, &rows, &table, &chamber);
        println!("{chamber}: {} checks, {}", report.entries.len(), if report.passed() { "pass" } else { "FAIL" });
        all_pass &= report.passed();
    }
    println!("all chambers pass: {all_pass}");

    // Tables round-trip through JSON, which is also how other quivers enter.
    let chamber = Chamber::identity(2);
    let table = enumerate_fixed_points(&q, &DimVec(vec![1]), &Decomposition::unit_framings(&[0, 0])?, &chamber)?;
    let json = table.to_json();
    println!("{json}");
    assert_eq!(RestrictionTable::from_json(&json)?, table);
    Ok(())
}

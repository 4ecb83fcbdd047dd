//! Wall-crossing matrices and the Yang–Baxter checks for T*Gr(v, 3).

use cohastab::quiver::Quiver;
use cohastab::rmatrix::{check_ybe, grassmannian_table, r_matrix, stab_matrix};
use cohastab::stab::Chamber;

fn main() -> cohastab::error::Result<()> {
    let q = Quiver::a1();
    let (id, rev) = (Chamber::identity(2), Chamber::from_word(&[2, 1])?);
    let m_id = stab_matrix(&q, &grassmannian_table(&q, 1, 2, &id)?, &id)?;
    let m_rev = stab_matrix(&q, &grassmannian_table(&q, 1, 2, &rev)?, &rev)?;
    println!("Stab {id}:\n{}", m_id.matrix);
    println!("Stab {rev}:\n{}", m_rev.matrix);
    println!("R:\n{}", r_matrix(&m_id, &m_rev)?);

    for v in [1, 2] {
        print!("{}", check_ybe(&q, v)?.to_text());
    }
    Ok(())
}

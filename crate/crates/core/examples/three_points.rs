use convlab_core::continuity::{is_alpha_m_continuous, is_m_continuous};
use convlab_core::{Poset, RelationMatrix, Selection, SelectionKind};

fn main() -> convlab_core::Result<()> {
    // a < c, b < c
    let p = Poset::from_covers(3, &[(0, 2), (1, 2)])?.with_labels(["a", "b", "c"])?;
    let fam = Selection::builtin(SelectionKind::ACh).realize(&p)?;

    let wb = RelationMatrix::way_below_m(&fam);
    println!("way-below equals the order: {}", wb.equals_order(&p));
    println!("M-continuous: {}", is_m_continuous(&fam).holds);

    let alpha = is_alpha_m_continuous(&fam);
    if let Some(clause) = alpha.first_failure() {
        println!("alpha(M)-continuity fails: {} at {:?}", clause.clause, clause.at);
    }
    Ok(())
}

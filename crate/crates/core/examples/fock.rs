//! Normal ordering, vacuum expectations and Gram matrices.

use spinstat::exact::ratio;
use spinstat::flavor::kirchoff_check;
use spinstat::fock::{adjoint, gram_matrix, normal_order, vacuum_expectation, ModeExpansion, OperatorWord, RelationTable};

const TABLE: &str = "\
bracket = anticommutator
pair a bdag = 1
pair c ddag = -1
";

fn main() -> spinstat::Result<()> {
    let table = RelationTable::parse(TABLE)?;
    for text in ["a bdag", "c ddag", "a c ddag bdag", "bdag a bdag"] {
        let w = OperatorWord::parse(text);
        println!("{text:>14} -> {}   <0|.|0> = {}", normal_order(&w, &table)?, vacuum_expectation(&w, &table)?.compact());
    }
    println!("adjoint of `a ddag`: {}", adjoint(&OperatorWord::parse("a ddag"), &table)?);

    let states: Vec<OperatorWord> = ["bdag", "ddag", "bdag ddag"].iter().map(|s| OperatorWord::parse(s)).collect();
    let g = gram_matrix(&states, &table)?;
    println!("gram {} signature {:?}", g.matrix, g.signature);

    let field = ModeExpansion::hermitian("phi", &[("k1", ratio(1, 1)), ("k2", ratio(5, 2))]);
    println!("hermitian field: {:?}", kirchoff_check(&field));
    let mut half = field.clone();
    half.terms.retain(|t| t.mode != "k2" || t.symbol.ends_with("dag"));
    println!("creation-only mode: {:?}", kirchoff_check(&half));
    Ok(())
}

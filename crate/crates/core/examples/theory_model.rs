//! Parsing a theory description and assembling its kinematic matrix.

use spinstat::theory::{build_kinematic, parse_theory, serialize_theory};

const TEXT: &str = "\
# one vector doublet and a Dirac field
theory mixed
field A spin=1 copies=2
field psi spin=1/2 flavors=2
";

fn main() -> spinstat::Result<()> {
    let spec = parse_theory(TEXT)?;
    print!("{}", serialize_theory(&spec));
    println!("total dimension {}", spec.dim());
    let build = build_kinematic(&spec)?;
    let k = &build.kinematic;
    for (i, label) in k.index_map.iter().enumerate().take(8) {
        println!("  index {i}: {label:?}");
    }
    println!("K0 symmetry: {}", k.matrix.symmetry_class());
    for (fi, f) in spec.fields.iter().enumerate() {
        let range: Vec<usize> = spec.field_range(fi).collect();
        println!("  block {}: {}", f.name, k.restrict(&range).matrix.symmetry_class());
    }
    let single = parse_theory("theory lone\nfield phi spin=0\n")?;
    for m in build_kinematic(&single)?.missing {
        println!("missing {}: {}", m.field, m.reason);
    }
    Ok(())
}

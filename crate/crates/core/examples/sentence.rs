//! The sentence psi_S and its exhaustive model finder.

use monalg::monoid::enumerate_monoids;
use monalg::sentence::{build_sentence, find_model};
use monalg::{Field, Monoid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::prime(2)?;
    let m = Monoid::bicyclic();
    let support = vec![m.parse_elem("p")?, m.parse_elem("q")?];
    let (spec, sys) = build_sentence(&m, &support, 1)?;
    print!("{}", sys.to_text());

    let report = find_model(&spec, &sys, &f, 1 << 16, 4)?;
    let model = report.model.ok_or("expected a model")?;
    println!(
        "SAT after {} of {} assignments: A = {}, B = {}",
        report.scanned,
        report.space,
        model.a.entry(0, 0),
        model.b.entry(0, 0)
    );

    for n in 1..=3 {
        for t in enumerate_monoids(n)? {
            let els = t.elements()?;
            let (spec, sys) = build_sentence(&t, &els, 1)?;
            assert!(find_model(&spec, &sys, &f, 1 << 16, 1)?.model.is_none());
        }
    }
    println!("every monoid of order at most 3: UNSAT with S = M, d = 1");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("sentence example");
}

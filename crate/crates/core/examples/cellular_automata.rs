//! Cellular automata over a finite monoid: surjunctivity and left inverses.

use monalg::ca::{all_rules, direct_finiteness_scan, surjunctivity_scan, DEFAULT_CONFIG_BUDGET, DEFAULT_RULE_BUDGET};
use monalg::monoid::enumerate_monoids;
use monalg::pattern::SymbolAlphabet;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let alphabet = SymbolAlphabet::new(2)?;
    for (k, m) in enumerate_monoids(3)?.iter().enumerate() {
        let els = m.elements()?;
        let report = surjunctivity_scan(m, alphabet, &els, DEFAULT_RULE_BUDGET, DEFAULT_CONFIG_BUDGET)?;
        let df = direct_finiteness_scan(m, alphabet, &els, DEFAULT_RULE_BUDGET, DEFAULT_CONFIG_BUDGET)?;
        println!(
            "monoid {:2}: {} rules, {} injective, surjunctive {}, CA monoid directly finite {}",
            k + 1,
            report.rules,
            report.injective,
            report.violation.is_none(),
            df.holds()
        );
    }

    let m = &enumerate_monoids(3)?[0];
    let els = m.elements()?;
    let tau = all_rules(m, alphabet, &els, DEFAULT_RULE_BUDGET)?
        .into_iter()
        .find(|r| r.injective(DEFAULT_CONFIG_BUDGET).map(|v| v.holds()).unwrap_or(false) && r.memory().len() > 1)
        .ok_or("no injective rule")?;
    let (min, _) = tau.minimal_memory();
    let sigma = tau.left_inverse(DEFAULT_CONFIG_BUDGET)?;
    let id = sigma.compose(&tau)?;
    println!("tau:\n{}", monalg::parse::format_rule(&tau));
    println!("minimal memory of tau: {}", min.iter().map(|x| m.name(x)).collect::<Vec<_>>().join(" "));
    println!("sigma o tau is the identity: {}", id.equivalent(&monalg::ca::CARule::identity(m, alphabet)));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("cellular automata example");
}

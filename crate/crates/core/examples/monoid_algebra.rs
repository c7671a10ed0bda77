//! The bicyclic monoid and its algebra: `pq = 1` but `qp != 1`.

use monalg::{AlgElem, AlgMatrix, Field, Monoid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let m = Monoid::bicyclic();
    let (p, q) = (m.parse_elem("p")?, m.parse_elem("q")?);
    println!("pq = {}", m.name(&m.mul(&p, &q)?));
    println!("qp = {}", m.name(&m.mul(&q, &p)?));
    println!("(q^2p^3)(qp^4) = {}", m.name(&m.mul(&m.parse_elem("q^2p^3")?, &m.parse_elem("qp^4")?)?));

    let f = Field::prime(2)?;
    let s = AlgElem::parse(&f, &m, "p + q")?;
    let sq = s.mul(&s)?;
    println!("(p + q)^2 over GF(2) = {sq}");
    assert_eq!(sq.to_string(), "1 + p^2 + q^1p^1 + q^2");

    let a = AlgMatrix::scalar(AlgElem::parse(&f, &m, "p")?);
    let b = AlgMatrix::scalar(AlgElem::parse(&f, &m, "q")?);
    println!("AB is the identity: {}", a.mul(&b)?.is_identity());
    println!("BA is the identity: {}", b.mul(&a)?.is_identity());

    let table = monalg::parse::parse_monoid_table("elements: e z\nrow: e z\nrow: z z\n")?;
    println!("{{e, z}} with z^2 = z is directly finite: {}", table.directly_finite()?.holds());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("monoid algebra example");
}

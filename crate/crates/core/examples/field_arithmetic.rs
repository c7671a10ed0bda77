//! Exact arithmetic in GF(p), GF(p^k) and Q.

use monalg::Field;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let gf3 = Field::from_spec("3")?;
    let two = gf3.parse_scalar("2")?;
    println!("GF(3): 2 * 2 = {}", gf3.format(&gf3.mul(&two, &two)));

    // t^2 + t + 1 is the default modulus for GF(4)
    let gf4 = Field::from_spec("4")?;
    let t = gf4.generator().ok_or("GF(4) has a generator")?;
    let t2 = gf4.mul(&t, &t);
    println!("GF(4): t * t = {}", gf4.format(&t2));
    assert_eq!(gf4.format(&t2), "t+1");
    println!("GF(4): rank of t = {}", gf4.rank(&t)?);

    let q = Field::rationals();
    let sum = q.add(&q.parse_scalar("1/3")?, &q.parse_scalar("1/6")?);
    println!("Q: 1/3 + 1/6 = {}", q.format(&sum));

    match Field::from_spec("2^2:t^2+1") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => return Err("t^2+1 is reducible over GF(2)".into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("field example");
}

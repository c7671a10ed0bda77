//! One-sided inverses: always two-sided over finite monoids, not over the
//! bicyclic monoid.

use monalg::finiteness::{bicyclic_witness, certify_two_sided, flatten, inverse_via_flattening, random_unit};
use monalg::sample::Sampler;
use monalg::{Field, Monoid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for spec in ["2", "3", "4", "Q"] {
        let f = Field::from_spec(spec)?;
        let (a, b) = bicyclic_witness(&f)?;
        println!("{f}: A = {}, B = {}, BA = {}", a.entry(0, 0), b.entry(0, 0), b.mul(&a)?.entry(0, 0));
    }

    let f = Field::prime(3)?;
    let m = Monoid::cyclic(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = random_unit(&Sampler::new(&f, &m), &mut rng, &f, &m, 2, 5)?;
    let b = inverse_via_flattening(&a)?.ok_or("unit not invertible")?;
    let cert = certify_two_sided(&a, &b)?;
    println!("A =\n{a}B =\n{b}");
    println!(
        "BA = I: {}, flatten(A) rank {} of {}",
        cert.direct, cert.rank, cert.size
    );
    println!("flatten(A):\n{:?}", flatten(&a)?.matrix());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("finiteness example");
}

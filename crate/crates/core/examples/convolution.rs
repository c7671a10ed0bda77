//! Windowed configurations and the right action `c |-> c * A`.

use monalg::pattern::{convolve_matrix, required_domain};
use monalg::sample::Sampler;
use monalg::{AlgMatrix, Field, Monoid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::prime(3)?;
    let m = Monoid::bicyclic();
    let a = monalg::parse::parse_matrix(&f, &m, "2\np; 1 + q\n0; 2*q^2\n")?;
    let b = monalg::parse::parse_matrix(&f, &m, "2\nq; 0\np; 1\n")?;

    // c must be known on S*W to compute c * A on W
    let w = vec![m.identity(), m.parse_elem("p")?];
    let mid = required_domain(&m, &w, &b.support())?;
    let dom = required_domain(&m, &mid, &a.support())?;
    let names: Vec<String> = dom.iter().map(|x| m.name(x)).collect();
    println!("window {} needs input on {}", w.len(), names.join(" "));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let c = Sampler::new(&f, &m).vector_pattern(&mut rng, 2, &dom);
    let lhs = convolve_matrix(&convolve_matrix(&c, &a, &mid)?, &b, &w)?;
    let rhs = convolve_matrix(&c, &a.mul(&b)?, &w)?;
    print!("(c * A) * B =\n{}", monalg::parse::format_vector_pattern(&f, &lhs));
    assert_eq!(lhs, rhs);
    println!("(c * A) * B = c * (AB): true");

    let id = convolve_matrix(&c, &AlgMatrix::identity(2, &f, &m), &dom)?;
    println!("c * I = c: {}", id == c);

    match convolve_matrix(&c.restrict(&w)?, &a, &w) {
        Err(e) => println!("too small a domain: {e}"),
        Ok(_) => return Err("expected a domain error".into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("convolution example");
}

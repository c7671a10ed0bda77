//! Linear cellular automata: `psi(A) = (c |-> c * A)` reverses products.

use monalg::lca::{psi, psi_inverse};
use monalg::{AlgElem, AlgMatrix, Field, Monoid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::from_spec("4")?;
    let m = Monoid::bicyclic();
    let a = AlgMatrix::scalar(AlgElem::parse(&f, &m, "p + t*q")?);
    let b = AlgMatrix::scalar(AlgElem::parse(&f, &m, "q^2 + (t+1)*1")?);
    let (ra, rb) = (psi(&a), psi(&b));
    let names = |xs: &[monalg::Elem]| xs.iter().map(|x| m.name(x)).collect::<Vec<_>>().join(" ");
    println!("memory of psi(A): {}", names(&ra.memory()));

    // treat psi(B) o psi(A) as a black box and read its matrix back
    let support = m.product_set(&a.support(), &b.support())?;
    let one = [m.identity()];
    let mid = b.support();
    let recovered = psi_inverse(&f, &m, 1, &support, |c| rb.apply(&ra.apply(c, &mid)?, &one), 7)?;
    println!("psi^-1(psi(B) o psi(A)) = {}", recovered.entry(0, 0));
    println!("AB                      = {}", a.mul(&b)?.entry(0, 0));
    assert_eq!(recovered, a.mul(&b)?);

    // supp(AB) lies in supp(A) supp(B), so that is a valid candidate set
    println!("dependence scan of psi(AB): {}", names(&rb.compose(&ra)?.dependence_reduction(&support)?));

    let p = psi(&AlgMatrix::scalar(AlgElem::parse(&f, &m, "p")?));
    let q = psi(&AlgMatrix::scalar(AlgElem::parse(&f, &m, "q")?));
    println!("psi(q) o psi(p) is the identity: {}", q.compose(&p)?.matrix().is_identity());
    println!("psi(p) o psi(q) is the identity: {}", p.compose(&q)?.matrix().is_identity());

    let c3 = Monoid::cyclic(3)?;
    let g = psi(&AlgMatrix::scalar(AlgElem::parse(&f, &c3, "1 + g")?));
    let v = g.injective_surjective_finite()?;
    println!("1 + g over cyclic:3, GF(4): injective {}, rank {} of {}", v.injective, v.rank, v.size);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("linear CA example");
}

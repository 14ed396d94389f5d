use gwenum_core::binom::{finite_corpus, identity_cases, quadratic_corpus, Binomials};
use gwenum_core::{BaseField, SquareClass};

fn run_all(cases: &[gwenum_core::binom::IdentityCase]) {
    let b = Binomials::new();
    let mut failures = Vec::new();
    for c in cases {
        match c.run(&b) {
            Ok(true) => {}
            Ok(false) => failures.push(c.to_string()),
            Err(e) => failures.push(format!("{c}: {e}")),
        }
    }
    assert!(failures.is_empty(), "{} of {} failed: {:?}", failures.len(), cases.len(), &failures[..failures.len().min(5)]);
}

#[test]
fn finite_fields_degree_ten() {
    for q in [3u64, 5, 9] {
        let algs = finite_corpus(q, 10).unwrap();
        let cases = identity_cases(&algs, &[SquareClass::Finite(true)]);
        run_all(&cases);
    }
}

#[test]
fn multiquadratic_degree_eight() {
    let q = BaseField::Rationals;
    let algs = quadratic_corpus(q, &[-1, 2, 3, 5], 8).unwrap();
    let twists: Vec<SquareClass> = [-1, 2, 5, 30].iter().map(|d| q.class_of_int(*d).unwrap()).collect();
    run_all(&identity_cases(&algs, &twists));
}

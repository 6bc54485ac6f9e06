use foliation_core::exactnum::{int, EmbeddingId, Matrix, QuadElement, Rational};
use foliation_core::qform::{
    certify, galois_embed_element, inverse, isotropic_witness, plane_rotation_search, product, reflection_pair,
    OrthogonalElement, QuadraticForm,
};
use proptest::prelude::*;
use std::sync::OnceLock;

const SIGMA1: EmbeddingId = EmbeddingId(1);
const SIGMA2: EmbeddingId = EmbeddingId(2);

fn q(a: i64, b: i64) -> QuadElement {
    QuadElement::from_ints(a, b)
}

fn worked_form() -> QuadraticForm<QuadElement> {
    QuadraticForm::diagonal(&[q(1, 0), q(1, 0), q(1, 0), q(0, -1), q(0, -1)]).unwrap()
}

fn unit(i: usize) -> Vec<QuadElement> {
    (0..5).map(|k| if k == i { q(1, 0) } else { q(0, 0) }).collect()
}

/// Plane rotations of height at most 4 plus two reflection pairs.
fn generators() -> &'static Vec<OrthogonalElement<QuadElement>> {
    static GENS: OnceLock<Vec<OrthogonalElement<QuadElement>>> = OnceLock::new();
    GENS.get_or_init(|| {
        let phi = worked_form();
        let mut out = Vec::new();
        for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)] {
            out.extend(plane_rotation_search(&phi, i, j, 4).unwrap());
        }
        out.push(reflection_pair(&phi, &unit(0), &unit(3)).unwrap());
        out.push(reflection_pair(&phi, &unit(2), &unit(4)).unwrap());
        out
    })
}

fn quad_entry() -> impl Strategy<Value = QuadElement> {
    (-4i64..=4, -4i64..=4).prop_map(|(a, b)| q(a, b))
}

fn quad_matrix(n: usize) -> impl Strategy<Value = Matrix<QuadElement>> {
    prop::collection::vec(quad_entry(), n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn rational_invertible(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-4i64..=4, n * n)
        .prop_map(move |v| Matrix::from_fn(n, n, |i, j| int(v[i * n + j])))
        .prop_filter("invertible", |m| m.rank() == m.rows())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_products_stay_in_the_group(picks in prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 1..8)) {
        let phi = worked_form();
        let gens = generators();
        let mut acc: Option<OrthogonalElement<QuadElement>> = None;
        for (idx, inv) in picks {
            let g = &gens[idx.index(gens.len())];
            let g = if inv { inverse(g, &phi) } else { g.clone() };
            acc = Some(match acc {
                None => g,
                Some(a) => product(&a, &g),
            });
        }
        let m = acc.unwrap();
        let cert = certify(m.matrix(), &phi).unwrap();
        prop_assert!(cert.passed(), "{:?}", cert.failures());
        let one = product(&m, &inverse(&m, &phi));
        prop_assert_eq!(one.matrix(), &Matrix::identity(5));
        let e = galois_embed_element(&m, &phi, SIGMA2).unwrap();
        prop_assert!(e.residual <= 1e-12);
    }

    #[test]
    fn conjugation_commutes_with_congruence(m in quad_matrix(3), d in prop::collection::vec(quad_entry(), 3)) {
        let conj = |x: &Matrix<QuadElement>| x.map(QuadElement::galois_conjugate);
        let a = Matrix::diagonal(&d);
        let lhs = conj(&m.transpose().matmul(&a).matmul(&m));
        let rhs = conj(&m).transpose().matmul(&conj(&a)).matmul(&conj(&m));
        prop_assert_eq!(&lhs, &rhs);
        if let Ok(phi) = QuadraticForm::new(a.clone()) {
            let c = phi.conjugate(SIGMA2).unwrap();
            prop_assert_eq!(c.matrix(), &conj(&a));
        }
    }

    #[test]
    fn signature_is_congruence_invariant(p in rational_invertible(4), signs in prop::collection::vec(prop::sample::select(vec![-3i64, -1, 1, 2]), 4)) {
        let a = Matrix::diagonal(&signs.iter().map(|&s| int(s)).collect::<Vec<_>>());
        let phi = QuadraticForm::new(a).unwrap();
        let moved = QuadraticForm::new(p.transpose().matmul(phi.matrix()).matmul(&p)).unwrap();
        prop_assert_eq!(phi.real_signature(SIGMA1).unwrap(), moved.real_signature(SIGMA1).unwrap());
        let pos = signs.iter().filter(|&&s| s > 0).count();
        prop_assert_eq!(moved.real_signature(SIGMA1).unwrap(), (pos, 4 - pos));
    }

    #[test]
    fn quadratic_signature_is_congruence_invariant(p in rational_invertible(3)) {
        let phi = QuadraticForm::diagonal(&[q(1, 0), q(1, 1), q(0, -1)]).unwrap();
        let pq = p.map(|x| QuadElement::new(x.clone(), int(0)));
        let moved = QuadraticForm::new(pq.transpose().matmul(phi.matrix()).matmul(&pq)).unwrap();
        for s in [SIGMA1, SIGMA2] {
            prop_assert_eq!(phi.real_signature(s).unwrap(), moved.real_signature(s).unwrap());
        }
    }
}

#[test]
fn every_found_generator_is_certified() {
    let phi = worked_form();
    for g in generators() {
        assert!(certify(g.matrix(), &phi).unwrap().passed());
        assert!(galois_embed_element(g, &phi, SIGMA2).unwrap().residual <= 1e-12);
    }
    // mixed planes contribute elements of infinite order
    assert!(generators().iter().any(|g| g.matrix()[(3, 2)] != q(0, 0) && g.matrix()[(2, 2)] != q(0, 0)));
}

#[test]
fn isotropic_rational_forms_are_not_certified_anisotropic() {
    let corpus: Vec<Vec<i64>> = vec![vec![1, -1], vec![1, 1, -2], vec![2, 3, -5], vec![1, 1, 1, -3], vec![1, -4, 1]];
    for coeffs in corpus {
        let phi = QuadraticForm::diagonal(&coeffs.iter().map(|&c| int(c)).collect::<Vec<_>>()).unwrap();
        assert!(!phi.anisotropy_by_conjugate_definiteness(), "{coeffs:?}");
        let v = isotropic_witness(&phi, 2).unwrap_or_else(|| panic!("no witness for {coeffs:?}"));
        assert!(v.iter().any(|x| *x != int(0)));
        assert_eq!(phi.evaluate(&v), int(0));
    }
}

#[test]
fn worked_form_is_certified_anisotropic() {
    let phi = worked_form();
    assert!(phi.anisotropy_by_conjugate_definiteness());
    assert_eq!(isotropic_witness(&phi, 1), None);
}

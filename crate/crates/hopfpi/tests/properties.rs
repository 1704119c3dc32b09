//! Property tests for the exact linear algebra, the scalar syntax, the file
//! format and the linear structure of integrals and traces.

use proptest::prelude::*;

use hopfpi::crossed::Crossing;
use hopfpi::field::{Field, Scalar};
use hopfpi::format::{emit, parse, Instance};
use hopfpi::group::FiniteGroup;
use hopfpi::hopf::HopfPiData;
use hopfpi::instances::{group_algebra, sweedler, zoo};
use hopfpi::integrals::{is_integral, pi_integral, Side};
use hopfpi::linalg::{kron_vectors, LinearMap};
use hopfpi::report::Status;
use hopfpi::traces::{verify_trace, PiTrace};

const PRIMES: [u64; 3] = [2, 5, 7];

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        (0..PRIMES.len()).prop_map(|i| Field::prime(PRIMES[i]).unwrap())
    ]
}

fn scalar(field: Field) -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5).prop_map(move |(n, d)| match field {
        Field::Rational => field.fraction(n, d).unwrap(),
        Field::Prime(_) => field.from_i64(n),
    })
}

fn matrix(field: Field, rows: usize, cols: usize) -> impl Strategy<Value = LinearMap> {
    proptest::collection::vec(scalar(field), rows * cols)
        .prop_map(move |data| LinearMap::new(field, rows, cols, data).unwrap())
}

fn field_and_matrix() -> impl Strategy<Value = LinearMap> {
    (field_strategy(), 1usize..=5, 1usize..=5).prop_flat_map(|(k, r, c)| matrix(k, r, c))
}

fn vector(field: Field, n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(scalar(field), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity_is_column_count(m in field_and_matrix()) {
        let kernel = m.nullspace();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn inverse_is_two_sided(m in (field_strategy(), 1usize..=4).prop_flat_map(|(k, n)| matrix(k, n, n))) {
        match m.inverse() {
            Some(inv) => {
                prop_assert!(m.compose(&inv).is_identity());
                prop_assert!(inv.compose(&m).is_identity());
            }
            None => prop_assert!(m.rank() < m.rows()),
        }
    }

    #[test]
    fn solve_returns_a_solution(
        (m, b) in (field_strategy(), 1usize..=4, 1usize..=4)
            .prop_flat_map(|(k, r, c)| (matrix(k, r, c), vector(k, r)))
    ) {
        if let Some(x) = m.solve(&b).unwrap() {
            prop_assert_eq!(m.apply(&x), b);
        } else {
            // Inconsistent: appending b as a column raises the rank.
            let mut cols: Vec<_> = (0..m.cols()).map(|j| m.column(j)).collect();
            cols.push(b.clone());
            let augmented = LinearMap::from_columns(m.field(), m.rows(), &cols);
            prop_assert_eq!(augmented.rank(), m.rank() + 1);
        }
    }

    #[test]
    fn kron_mixed_product(
        (a, b, v, w) in (field_strategy(), 1usize..=3, 1usize..=3).prop_flat_map(|(k, n, m)| {
            (matrix(k, n, n), matrix(k, m, m), vector(k, n), vector(k, m))
        })
    ) {
        let k = a.field();
        let lhs = LinearMap::kron(&a, &b).apply(&kron_vectors(k, &v, &w));
        let rhs = kron_vectors(k, &a.apply(&v), &b.apply(&w));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn scalar_text_round_trips(s in field_strategy().prop_flat_map(scalar)) {
        let k = s.field();
        prop_assert_eq!(k.parse(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn field_inverse(s in field_strategy().prop_flat_map(scalar)) {
        match s.inv() {
            Some(i) => prop_assert!((s * i).is_one()),
            None => prop_assert!(s.is_zero()),
        }
    }

    #[test]
    fn format_round_trips_with_random_counit(
        index in 0usize..11,
        entries in proptest::collection::vec((-9i64..=9, 1i64..=5), 16)
    ) {
        let (_, inst) = zoo().unwrap().swap_remove(index);
        let mut parts = inst.hopf.to_parts();
        let k = parts.field;
        let d1 = parts.counit.len();
        parts.counit = entries[..d1]
            .iter()
            .map(|&(n, d)| k.fraction(n, d).unwrap_or_else(|| k.from_i64(n)))
            .collect();
        let tampered = Instance::plain(HopfPiData::from_parts(parts).unwrap());
        let text = emit(&tampered);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &tampered);
        prop_assert_eq!(emit(&back), text);
    }

    #[test]
    fn scaled_integrals_remain_integrals(c in scalar(Field::Rational), left in any::<bool>()) {
        let h = sweedler(Field::Rational).unwrap();
        let side = if left { Side::Left } else { Side::Right };
        let lam = pi_integral(&h, side).unwrap();
        let scaled: Vec<Vec<Scalar>> = lam
            .iter()
            .map(|l| l.iter().map(|x| x.clone() * c.clone()).collect())
            .collect();
        prop_assert!(is_integral(&h, &scaled, side).passed());
    }

    #[test]
    fn traces_on_abelian_group_algebra(a in scalar(Field::Rational), b in scalar(Field::Rational), c in scalar(Field::Rational)) {
        // On k[Z/3] a form is a trace iff tr(g) = tr(g⁻¹).
        let h = group_algebra(Field::Rational, &FiniteGroup::cyclic(3));
        let phi = Crossing::trivial(&h).unwrap();
        let tr = PiTrace::new(&h, vec![vec![a, b.clone(), c.clone()]]).unwrap();
        let report = verify_trace(&h, &phi, &tr);
        prop_assert_eq!(report.passed(), b == c);
        prop_assert_eq!(report.get("trace.symmetric").unwrap().status, Status::Pass);
    }
}

use drgkit::exactla::AlgebraicScalar;
use drgkit::families::{construct, seidel_switch};
use drgkit::graph::Graph;
use drgkit::scheme::{eigen_data, krein, verify_drg, DrgParameters};
use drgkit::spectra::{
    graph_spectrum, local_duality_check, second_subconstituent_derived, subconstituent_spectrum, Spectrum,
};
use drgkit::terwilliger::terwilliger_dim;
use drgkit::tmodules::{decompose, wedderburn_dim};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const SRGS: &[(&str, &[i64])] = &[
    ("shrikhande", &[]),
    ("rook_grid", &[4]),
    ("rook_grid", &[3]),
    ("johnson", &[8, 2]),
    ("chang", &[1]),
    ("chang", &[2]),
    ("chang", &[3]),
    ("triangular_complement", &[6]),
    ("complete_bipartite", &[3]),
];

const DRGS: &[(&str, &[i64])] = &[
    ("shrikhande", &[]),
    ("johnson", &[8, 2]),
    ("chang", &[3]),
    ("icosahedron", &[]),
    ("johnson", &[6, 3]),
    ("johnson", &[8, 4]),
    ("hamming", &[3, 3]),
    ("hamming", &[4, 2]),
    ("complete_bipartite", &[4]),
];

fn random_graph() -> impl Strategy<Value = Graph> {
    (2usize..12).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges, None).unwrap()
        })
    })
}

fn scalar() -> impl Strategy<Value = AlgebraicScalar> {
    (-20i64..20, 1i64..6, -20i64..20, 1i64..6, prop::sample::select(vec![0u64, 2, 3, 5, 13])).prop_map(
        |(a, b, c, d, r)| {
            let q = |n, m| BigRational::new(BigInt::from(n), BigInt::from(m));
            if r == 0 {
                AlgebraicScalar::from_rational(q(a, b))
            } else {
                AlgebraicScalar::surd(q(a, b), q(c, d), r)
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn seidel_switching_is_an_involution(g in random_graph(), mask in any::<u16>()) {
        let s: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        let once = seidel_switch(&g, &s).unwrap();
        prop_assert_eq!(seidel_switch(&once, &s).unwrap().edges(), g.edges());
        let rest: Vec<usize> = (0..g.n()).filter(|v| !s.contains(v)).collect();
        prop_assert_eq!(seidel_switch(&g, &rest).unwrap().edges(), once.edges());
    }

    #[test]
    fn scalar_text_round_trip(x in scalar()) {
        let back: AlgebraicScalar = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn scalar_field_arithmetic(x in scalar(), y in scalar()) {
        prop_assume!(x.field() == 0 || y.field() == 0 || x.field() == y.field());
        prop_assume!(!y.is_zero());
        let q = (&x * &y).checked_div(&y).unwrap();
        prop_assert_eq!(q, x.clone());
        prop_assert_eq!(&(&x + &y) - &y, x);
    }

    #[test]
    fn graph_json_round_trip(g in random_graph()) {
        let back = Graph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn spectrum_trace_identities(g in random_graph()) {
        let s = graph_spectrum(&g);
        prop_assert_eq!(s.total(), g.n());
        if let Some(t) = s.trace() {
            prop_assert_eq!(t, BigRational::from_integer(0.into()));
        }
        let squares: f64 = s.expanded_f64().iter().map(|v| v * v).sum();
        prop_assert!((squares - 2.0 * g.edge_count() as f64).abs() < 1e-6);
        let text: Spectrum = s.to_string().parse().unwrap();
        if s.is_exact() {
            prop_assert_eq!(text, s);
        }
    }

    #[test]
    fn distance_partition_matches_parameters(i in 0..DRGS.len(), x in 0usize..200) {
        let (name, p) = DRGS[i];
        let g = construct(name, p).unwrap();
        let x = x % g.n();
        let params = verify_drg(&g).unwrap();
        let dd = g.distances().unwrap();
        prop_assert_eq!(dd.class_sizes(x), params.class_sizes.clone());
        prop_assert_eq!(params.class_sizes.iter().sum::<usize>(), g.n());
        prop_assert_eq!(DrgParameters::from_array(&params.b, &params.c).unwrap(), params.clone());
        let ed = eigen_data(&params).unwrap();
        prop_assert_eq!(ed.mult.iter().sum::<usize>(), g.n());
        prop_assert!(krein(&ed, &params).is_ok());
    }

    #[test]
    fn second_subconstituent_is_determined(i in 0..SRGS.len(), x in 0usize..100) {
        let (name, p) = SRGS[i];
        let g = construct(name, p).unwrap();
        let x = x % g.n();
        let sp = verify_drg(&g).unwrap().srg_params().unwrap();
        let s1 = subconstituent_spectrum(&g, x, 1).unwrap();
        let s2 = subconstituent_spectrum(&g, x, 2).unwrap();
        prop_assert_eq!(second_subconstituent_derived(&s1, &sp).unwrap(), s2.clone());
        prop_assert!(local_duality_check(&s1, &s2, &sp));
    }

    #[test]
    fn wedderburn_sum_equals_closure(i in 0..DRGS.len(), x in 0usize..200) {
        let (name, p) = DRGS[i];
        let g = construct(name, p).unwrap();
        let x = x % g.n();
        let params = verify_drg(&g).unwrap();
        let ed = eigen_data(&params).unwrap();
        if let Some(md) = decompose(&g, x, &params, &ed).unwrap() {
            prop_assert_eq!(md.total_dim(), g.n());
            prop_assert_eq!(wedderburn_dim(&md), terwilliger_dim(&g, x).unwrap());
        }
    }
}

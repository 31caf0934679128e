//! Invariants checked on cellulations drawn from small censuses.

use std::sync::OnceLock;

use proptest::prelude::*;

use cellcode::decoder::{self, Decoder, ErrorPattern};
use cellcode::gf2::Gf2Vector;
use cellcode::homology;
use cellcode::invariants::{dense_profile, pair_rank_dense, pair_rank_stabilizer, rank_profile, LocalGate};
use cellcode::search::{classes, SurfaceTarget, DEFAULT_CLASS_BUDGET};
use cellcode::stabilizer::{build_code, css_distance, hadamard_dual_equivalent, puncture};
use cellcode::surface::{dual, incidence_matrices, validate, Cellulation};

fn pool() -> &'static [Cellulation] {
    static POOL: OnceLock<Vec<Cellulation>> = OnceLock::new();
    POOL.get_or_init(|| {
        let levels = [
            (SurfaceTarget::PROJECTIVE_PLANE, 1..=6),
            (SurfaceTarget::SPHERE, 1..=4),
            (SurfaceTarget::TORUS, 2..=5),
            (SurfaceTarget::KLEIN_BOTTLE, 2..=5),
        ];
        let mut out = Vec::new();
        for (target, edges) in levels {
            for e in edges {
                for c in classes(target, e, None, DEFAULT_CLASS_BUDGET).unwrap() {
                    out.push(c.map().to_cellulation());
                }
            }
        }
        out
    })
}

fn cellulation() -> impl Strategy<Value = Cellulation> {
    (0..pool().len()).prop_map(|i| pool()[i].clone())
}

fn with_bits() -> impl Strategy<Value = (Cellulation, Vec<bool>)> {
    (cellulation(), proptest::collection::vec(any::<bool>(), 64))
}

fn vector(n: usize, bits: &[bool]) -> Gf2Vector {
    Gf2Vector::from_bits(&bits[..n])
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn incidence_relations(c in cellulation()) {
        validate(&c).unwrap();
        let inc = incidence_matrices(&c).unwrap();
        let bb = inc.vertex_edge.mul(&inc.face_edge.transpose()).unwrap();
        prop_assert!(bb.rows().iter().all(Gf2Vector::is_zero));
        prop_assert!(inc.face_edge.row_sum().is_zero());
        prop_assert!(inc.vertex_edge.row_sum().is_zero());
    }

    #[test]
    fn dual_is_an_involution_on_counts(c in cellulation()) {
        let d = dual(&c).unwrap();
        let (a, b) = (validate(&c).unwrap(), validate(&d).unwrap());
        prop_assert_eq!((a.vertices, a.edges, a.faces), (b.faces, b.edges, b.vertices));
        prop_assert_eq!((a.euler_characteristic, a.orientable), (b.euler_characteristic, b.orientable));
        let dd = validate(&dual(&d).unwrap()).unwrap();
        prop_assert_eq!((dd.vertices, dd.edges, dd.faces), (a.vertices, a.edges, a.faces));
    }

    #[test]
    fn systole_witness_is_minimal(c in cellulation()) {
        prop_assume!(homology::h1_dim(&c).unwrap() > 0);
        let s = homology::systole(&c).unwrap();
        let inc = incidence_matrices(&c).unwrap();
        prop_assert!(inc.vertex_edge.mul_vec(&s.witness).unwrap().is_zero());
        prop_assert!(homology::is_essential(&c, &s.witness).unwrap());
        prop_assert_eq!(s.witness.weight(), s.length);
        let e = c.edges.len();
        for m in 0u64..1 << e {
            let v = Gf2Vector::from_mask(e, m);
            if (m.count_ones() as usize) < s.length && inc.vertex_edge.mul_vec(&v).unwrap().is_zero() {
                prop_assert!(!homology::is_essential(&c, &v).unwrap());
            }
        }
    }

    #[test]
    fn dual_systole_is_systole_of_dual(c in cellulation()) {
        prop_assume!(homology::h1_dim(&c).unwrap() > 0);
        let d = dual(&c).unwrap();
        prop_assert_eq!(
            homology::dual_systole(&c).unwrap().length,
            homology::systole(&d).unwrap().length
        );
    }

    #[test]
    fn essentiality_ignores_boundaries((c, bits) in with_bits()) {
        prop_assume!(homology::h1_dim(&c).unwrap() > 0);
        let inc = incidence_matrices(&c).unwrap();
        let w = homology::systole(&c).unwrap().witness;
        let mut moved = w.clone();
        for (f, &b) in inc.face_edge.rows().iter().zip(&bits) {
            if b {
                moved.xor_assign(f);
            }
        }
        prop_assert!(homology::is_essential(&c, &moved).unwrap());
    }

    #[test]
    fn code_matches_homology(c in cellulation()) {
        let code = build_code(&c).unwrap();
        prop_assert_eq!(code.k, homology::h1_dim(&c).unwrap());
        prop_assert!(hadamard_dual_equivalent(&c).unwrap());
        if code.k > 0 {
            let expected = (
                homology::dual_systole(&c).unwrap().length,
                homology::systole(&c).unwrap().length,
            );
            prop_assert_eq!(css_distance(&code).unwrap(), expected);
        }
        let (xe, ze) = (code.x_stabilizers.echelon(), code.z_stabilizers.echelon());
        for (i, z) in code.logical_z.iter().enumerate() {
            prop_assert!(code.z_stabilizers.mul_vec(z).unwrap().is_zero());
            prop_assert!(!xe.contains(z));
            for (j, x) in code.logical_x.iter().enumerate() {
                prop_assert_eq!(z.dot(x), i == j);
            }
        }
        for x in &code.logical_x {
            prop_assert!(code.x_stabilizers.mul_vec(x).unwrap().is_zero());
            prop_assert!(!ze.contains(x));
        }
    }

    #[test]
    fn puncture_keeps_the_code(c in cellulation(), f in any::<prop::sample::Index>(), v in any::<prop::sample::Index>()) {
        let full = build_code(&c).unwrap();
        let p = puncture(&c, f.index(c.faces.len()), v.index(c.vertex_count)).unwrap();
        prop_assert_eq!(p.code.parameters(), full.parameters());
        prop_assert!(p.code.x_stabilizers.same_row_space(&full.x_stabilizers));
        prop_assert!(p.code.z_stabilizers.same_row_space(&full.z_stabilizers));
    }

    #[test]
    fn pair_ranks(c in cellulation(), seed in any::<u64>()) {
        let code = build_code(&c).unwrap();
        prop_assume!(code.n >= 2);
        let profile = rank_profile(&code);
        prop_assert!(profile.ranks.iter().all(|(_, r)| matches!(r, 1 | 2 | 4)));
        // Shuffle the qubits.
        let mut perm: Vec<usize> = (0..code.n).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(rank_profile(&code.permute_qubits(&perm)).histogram(), profile.histogram());
        if code.n <= 9 {
            for &((a, b), r) in &profile.ranks {
                prop_assert_eq!(pair_rank_dense(&code, (a, b)).unwrap(), r);
                prop_assert_eq!(pair_rank_stabilizer(&code, (a, b)).unwrap(), r);
            }
            let q = (seed % code.n as u64) as usize;
            let gates = [LocalGate::Hadamard(q), LocalGate::Phase((q + 1) % code.n)];
            prop_assert_eq!(dense_profile(&code, &gates).unwrap().ranks, profile.ranks.clone());
        }
    }

    #[test]
    fn decoding((c, bits) in with_bits()) {
        let code = build_code(&c).unwrap();
        let n = code.n;
        let dec = Decoder::new(&code);
        let err = ErrorPattern { x_errors: vector(n, &bits), z_errors: vector(n, &bits[n..]) };
        let syn = decoder::syndrome(&code, &err).unwrap();
        let corr = dec.correct(&syn).unwrap();
        prop_assert_eq!(decoder::syndrome(&code, &corr).unwrap(), syn);
        prop_assert!(corr.x_errors.weight() <= err.x_errors.weight());
        prop_assert!(corr.z_errors.weight() <= err.z_errors.weight());
        // Any other correction with the same syndrome gives the same verdict.
        let mut other = corr.clone();
        for (r, &b) in code.x_stabilizers.rows().iter().zip(bits.iter().rev()) {
            if b {
                other.x_errors.xor_assign(r);
            }
        }
        for (r, &b) in code.z_stabilizers.rows().iter().zip(bits.iter().skip(7)) {
            if b {
                other.z_errors.xor_assign(r);
            }
        }
        prop_assert_eq!(dec.is_failure(&err, &corr).unwrap(), dec.is_failure(&err, &other).unwrap());
    }
}

#[test]
fn pool_spans_four_surfaces() {
    let mut kinds: Vec<(i64, bool)> = pool()
        .iter()
        .map(|c| {
            let i = validate(c).unwrap();
            (i.euler_characteristic, i.orientable)
        })
        .collect();
    kinds.sort();
    kinds.dedup();
    assert_eq!(kinds, vec![(0, false), (0, true), (1, false), (2, true)]);
}

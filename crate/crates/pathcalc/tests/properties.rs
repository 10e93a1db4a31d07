//! Property tests for the algebraic invariants of each layer.  Random
//! objects are drawn from the seeded generators in `pathcalc::suites`, with
//! proptest choosing (and shrinking) the seed.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use pathcalc::calculus::{
    admissible_pairs, big_n, ftc_check, integrate_interval, simplex_character, stokes_cube, SimplexBase,
};
use pathcalc::characters::{Character, GaloisAction, Reg, Registry};
use pathcalc::funcring::{Domain, PolyFunction};
use pathcalc::linalg::{qi, Q};
use pathcalc::localfield::{FieldConfig, Scalar};
use pathcalc::paths::{self, tate, Chain, Path, Shape, Target};
use pathcalc::periods::Period;
use pathcalc::polytope::{AffineMap, Polytope};
use pathcalc::subdivision::{self, FormalChain, Kind};
use pathcalc::suites::random;

fn reg() -> Reg {
    Registry::standard(&FieldConfig::new(5, 40).unwrap()).unwrap()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn interval(reg: &Reg) -> Polytope {
    Polytope::cube(1, big_n(reg))
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn same(f: &PolyFunction, g: &PolyFunction) -> bool {
    f.sub(g).unwrap().is_zero()
}

// ------------------------------------------------------------ base field

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn valuation_is_additive(a in (1i64..1_000_000).prop_map(|x| x * 7 - 3_000_000), b in 1i64..5_000_000) {
        prop_assume!(a != 0);
        let field = FieldConfig::new(5, 40).unwrap();
        let (x, y) = (Scalar::from_i64(&field, a), Scalar::from_i64(&field, b));
        prop_assert_eq!(x.mul(&y).valuation().unwrap(), x.valuation().unwrap() + y.valuation().unwrap());
    }

    #[test]
    fn plog_is_a_homomorphism_on_principal_units(k1 in -10_000i64..10_000, k2 in -10_000i64..10_000, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let field = FieldConfig::new(p, 40).unwrap();
        let pk = |k: i64| Scalar::from_i64(&field, 1 + p as i64 * k);
        let (a, b) = (pk(k1), pk(k2));
        let diff = a.mul(&b).plog().unwrap().sub(&a.plog().unwrap()).sub(&b.plog().unwrap());
        prop_assert!(diff.valuation().is_none_or(|v| v >= 38));
    }
}

#[test]
fn teichmuller_lifts_are_roots_of_unity() {
    for p in [2u64, 3, 5, 7, 11] {
        let field = FieldConfig::new(p, 40).unwrap();
        for r in 1..p {
            let w = Scalar::teichmuller(&field, &BigInt::from(r)).unwrap();
            assert!(w.pow(p as i64 - 1).unwrap().approx_eq(&Scalar::one(&field)), "p={p} r={r}");
        }
    }
}

// ------------------------------------------------------------ characters

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn log_is_a_homomorphism(seed in any::<u64>(), arity in 1usize..=3) {
        let reg = reg();
        let mut rng = random::rng(seed);
        let x = random::character(&mut rng, &reg, arity);
        let y = random::character(&mut rng, &reg, arity);
        prop_assert!(x.mul(&y).unwrap().log(&reg).equals(&x.log(&reg).add(&y.log(&reg))));
    }

    #[test]
    fn torsion_characters_are_closed(seed in any::<u64>()) {
        let reg = reg();
        let x = random::character(&mut random::rng(seed), &reg, 1);
        if x.is_torsion(&reg) {
            prop_assert!(x.is_closed(&reg).unwrap());
        }
        let mu = Character::parse_text(&reg, "mu^3").unwrap();
        prop_assert!(mu.is_torsion(&reg) && mu.is_closed(&reg).unwrap());
    }

    #[test]
    fn norm_exponent_is_linear(seed in any::<u64>(), s in prop::collection::vec(-20i64..20, 2), t in prop::collection::vec(-20i64..20, 2)) {
        let reg = reg();
        let x = random::character(&mut random::rng(seed), &reg, 2);
        let (s, t): (Vec<_>, Vec<_>) = (s.iter().map(|v| rat(*v)).collect(), t.iter().map(|v| rat(*v)).collect());
        let st: Vec<_> = s.iter().zip(&t).map(|(a, b)| a + b).collect();
        prop_assert_eq!(x.norm_exponent_at(&reg, &st), x.norm_exponent_at(&reg, &s) + x.norm_exponent_at(&reg, &t));
    }

    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>(), s in 0i64..=8, t in 0i64..=8) {
        let reg = reg();
        let x = random::character(&mut random::rng(seed), &reg, 1);
        let n = big_n(&reg);
        // ε-exponents live in (1/N)Z, so multiples of N are always representable.
        let (vs, vt) = (x.evaluate_int(&reg, &[s * n]).unwrap(), x.evaluate_int(&reg, &[t * n]).unwrap());
        prop_assert!(x.evaluate_int(&reg, &[(s + t) * n]).unwrap().approx_eq(&vs.mul(&vt)));
    }
}

// -------------------------------------------------------------- polytopes

proptest! {
    #![proptest_config(config(60))]

    #[test]
    fn thick_representative_charts_are_inverse(bounds in prop::collection::vec((-4i64..4, 0i64..3), 1..=3), flat in prop::collection::vec(any::<bool>(), 3)) {
        let b: Vec<(Q, Q)> = bounds.iter().enumerate()
            .map(|(i, (lo, w))| (qi(*lo), qi(lo + if flat[i] { 0 } else { w + 1 })))
            .collect();
        let s = Polytope::boxed(&b).unwrap();
        let rep = s.thick_representative();
        for v in s.vertices() {
            prop_assert_eq!(&rep.a_inv.apply(&rep.a.apply(v)), v);
        }
        prop_assert!(rep.t.is_thick());
    }
}

// ---------------------------------------------------------- function ring

proptest! {
    #![proptest_config(config(60))]

    #[test]
    fn gauss_norm_is_power_multiplicative_and_integral(seed in any::<u64>(), n in 1usize..=2) {
        let reg = reg();
        let mut rng = random::rng(seed);
        let f = random::function(&mut rng, &reg, Polytope::cube(n, big_n(&reg)), 3).unwrap();
        let g = random::function(&mut rng, &reg, Polytope::cube(n, big_n(&reg)), 3).unwrap();
        let (ef, eg) = (f.gauss().unwrap(), g.gauss().unwrap());
        prop_assert_eq!(f.mul(&f).unwrap().gauss().unwrap(), &ef * qi(2));
        let efg = f.mul(&g).unwrap().gauss();
        prop_assert!(efg.is_some());
        prop_assert!(efg.unwrap() >= ef + eg);
    }

    #[test]
    fn reflection_pullback_is_an_isometry(seed in any::<u64>()) {
        let reg = reg();
        let f = random::function(&mut random::rng(seed), &reg, interval(&reg), 3).unwrap();
        let g = f.pullback(&AffineMap::reflection(&qi(big_n(&reg))), f.domain()).unwrap();
        prop_assert_eq!(g.gauss(), f.gauss());
    }

    #[test]
    fn involution_is_an_isometric_involution(seed in any::<u64>()) {
        let reg = reg();
        let f = random::function(&mut random::rng(seed), &reg, interval(&reg), 3).unwrap();
        let star = f.involution().unwrap();
        prop_assert_eq!(star.gauss(), f.gauss());
        prop_assert!(same(&star.involution().unwrap(), &f));
    }

    #[test]
    fn tensor_norms_add(seed in any::<u64>()) {
        let reg = reg();
        let mut rng = random::rng(seed);
        let f = random::function(&mut rng, &reg, interval(&reg), 2).unwrap();
        let g = random::function(&mut rng, &reg, interval(&reg), 2).unwrap();
        prop_assert_eq!(f.tensor(&g).unwrap().gauss().unwrap(), f.gauss().unwrap() + g.gauss().unwrap());
    }

    #[test]
    fn galois_twists_are_isometries(seed in any::<u64>(), u in prop::sample::select(vec![2i64, 3, 4, 6, 7])) {
        let reg = reg();
        let f = random::function(&mut random::rng(seed), &reg, interval(&reg), 3).unwrap();
        prop_assert_eq!(f.galois_twist(&GaloisAction::cyclotomic(u)).gauss(), f.gauss());
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn inverse_of_a_unit_multiplies_back_to_one(seed in any::<u64>()) {
        let reg = reg();
        let field = reg.field();
        let dom = Domain::new(&reg, interval(&reg));
        let mut rng = random::rng(seed);
        let x = random::character(&mut rng, &reg, 1);
        let y = random::character(&mut rng, &reg, 1);
        let probe = PolyFunction::monomial(&dom, &y, &Scalar::one(field)).unwrap().gauss().unwrap();
        // Scale y so that ‖g‖ ≤ 1/p.
        let k = (qi(1) - probe).ceil().to_integer().max(BigInt::from(0));
        let k: i64 = num_traits::ToPrimitive::to_i64(&k).unwrap();
        let c = Scalar::from_i64(field, rng.gen_range(1..25)).mul(&Scalar::from_i64(field, 5).pow(k).unwrap());
        let g = PolyFunction::monomial(&dom, &y, &c).unwrap();
        let f = PolyFunction::monomial(&dom, &x, &Scalar::from_i64(field, 3)).unwrap()
            .mul(&PolyFunction::one(&dom).add(&g).unwrap()).unwrap();
        let inv = f.invert_unit_auto().unwrap();
        let residual = f.mul(&inv).unwrap().with_tail(None).sub(&PolyFunction::one(&dom)).unwrap();
        prop_assert!(residual.gauss().is_none_or(|e| e >= qi(38)));
    }
}

// --------------------------------------------------------------- periods

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn period_equality_is_a_ring_congruence(seed in any::<u64>()) {
        let reg = reg();
        let mut rng = random::rng(seed);
        let mut integral = || integrate_interval(&random::function(&mut rng, &reg, interval(&reg), 2).unwrap()).unwrap();
        let (a, b, c) = (integral(), integral(), integral());
        // a' = (a·λ)/λ is a differently built representative of a.
        let lam = lambda_eps(&reg);
        let a2 = a.mul(&Period::linear(&reg, &lam)).div_linear(&lam).unwrap();
        prop_assert!(a2.equals(&a));
        prop_assert!(a2.add(&b).equals(&a.add(&b)));
        prop_assert!(a2.mul(&c).equals(&a.mul(&c)));
        prop_assert!(a.add(&b).mul(&c).equals(&a.mul(&c).add(&b.mul(&c))));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn filtration_truncation_is_multiplicative(seed in any::<u64>(), n in 1u32..=3) {
        let reg = reg();
        let mut rng = random::rng(seed);
        let mut poly = || {
            let x = random::character(&mut rng, &reg, 1);
            x.log(&reg).add(&Period::constant(&reg, &random::coefficient(&mut rng, reg.field())))
        };
        let (x, y) = (poly().mul(&poly()), poly());
        let lhs = x.mul(&y).fil_truncate(n).unwrap();
        let rhs = x.fil_truncate(n).unwrap().mul(&y.fil_truncate(n).unwrap()).fil_truncate(n).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }
}

/// The linear form `λ_ε` as a symbol map.
fn lambda_eps(reg: &Reg) -> std::collections::BTreeMap<usize, BigRational> {
    std::collections::BTreeMap::from([(reg.eps(), rat(1))])
}

// -------------------------------------------------------------- calculus

proptest! {
    #![proptest_config(config(60))]

    #[test]
    fn fundamental_theorem_of_calculus(seed in any::<u64>()) {
        let reg = reg();
        let f = random::function(&mut random::rng(seed), &reg, interval(&reg), 4).unwrap();
        prop_assert!(ftc_check(&f).unwrap().pass);
    }

    #[test]
    fn stokes_on_cubes(seed in any::<u64>(), n in 1usize..=3) {
        let reg = reg();
        let omega = random::form(&mut random::rng(seed), &reg, n, n - 1, 3).unwrap();
        prop_assert!(stokes_cube(&omega).unwrap().pass);
    }

    #[test]
    fn interval_integral_is_invariant_and_equivariant(seed in any::<u64>(), u in prop::sample::select(vec![2i64, 6])) {
        let reg = reg();
        let f = random::function(&mut random::rng(seed), &reg, interval(&reg), 3).unwrap();
        let v = integrate_interval(&f).unwrap();
        prop_assert!(integrate_interval(&f.involution().unwrap()).unwrap().equals(&v));
        let g = GaloisAction::cyclotomic(u);
        prop_assert!(integrate_interval(&f.galois_twist(&g)).unwrap().equals(&v.galois_twist(&g).unwrap()));
    }

    #[test]
    fn simplex_integral_is_independent_of_the_pair(seed in any::<u64>(), n in 1usize..=3) {
        let reg = reg();
        let mut rng = random::rng(seed);
        let x = random::character(&mut rng, &reg, n + 1);
        let pairs = admissible_pairs(&reg, &x).unwrap();
        let h = rng.gen_range(0..=n);
        let values: Vec<Period> = pairs.iter()
            .map(|&pr| simplex_character(&reg, &x, h, SimplexBase::WithValue, Some(pr)).unwrap())
            .collect();
        for v in &values {
            prop_assert!(v.equals(&values[0]));
        }
    }

    #[test]
    fn closed_functions_integrate_into_the_base_field(seed in any::<u64>()) {
        let reg = reg();
        let dom = Domain::new(&reg, interval(&reg));
        let mut rng = random::rng(seed);
        // Torsion characters are closed, so no log symbols can appear.
        let terms: Vec<(Character, Scalar)> = (0..rng.gen_range(1..=3))
            .map(|_| (Character::parse_text(&reg, &format!("mu^{}", rng.gen_range(0..4))).unwrap(), random::coefficient(&mut rng, reg.field())))
            .collect();
        let f = PolyFunction::from_ambient(&dom, terms).unwrap();
        prop_assert!(integrate_interval(&f).unwrap().is_polynomial());
    }
}

// ----------------------------------------------------------------- paths

fn random_square_path(reg: &Reg, seed: u64) -> Path {
    let dom = paths::shape_domain(reg, Shape::Cube(2));
    let mut rng = random::rng(seed);
    let terms: Vec<(Character, Scalar)> = (0..rng.gen_range(1..=3))
        .map(|_| (random::character(&mut rng, reg, 2), random::coefficient(&mut rng, reg.field())))
        .collect();
    Path::new(Shape::Cube(2), Target::Affine { arity: 1 }, vec![PolyFunction::from_ambient(&dom, terms).unwrap()]).unwrap()
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn boundary_of_a_boundary_vanishes(seeds in prop::collection::vec(any::<u64>(), 1..=3), weights in prop::collection::vec(-3i64..=3, 3)) {
        let reg = reg();
        let terms: Vec<(i64, Path)> = seeds.iter().zip(&weights).map(|(s, w)| (*w, random_square_path(&reg, *s))).collect();
        let chain = Chain::new(Shape::Cube(2), terms).unwrap();
        prop_assert!(chain.boundary().unwrap().boundary().unwrap().is_zero());
    }

    #[test]
    fn degenerate_cubes_vanish_in_normal_form(seed in any::<u64>()) {
        let reg = reg();
        let dom = paths::shape_domain(&reg, Shape::Cube(2));
        let mut rng = random::rng(seed);
        // Only the first coordinate enters: the square is degenerate.
        let x = random::character(&mut rng, &reg, 1).concat(&Character::parse_text(&reg, "1").unwrap());
        let f = PolyFunction::from_ambient(&dom, vec![(x, Scalar::one(reg.field()))]).unwrap();
        let path = Path::new(Shape::Cube(2), Target::Affine { arity: 1 }, vec![f]).unwrap();
        prop_assert!(path.is_degenerate().unwrap());
        prop_assert!(Chain::single(path).unwrap().is_zero());
    }

    #[test]
    fn rotation_numbers_add_under_pointwise_products(a in -3i64..=3, b in -3i64..=3) {
        let reg = reg();
        let zero = Scalar::zero(reg.field());
        let (ga, gb) = (tate::eps_cycle(&reg, a).unwrap(), tate::eps_cycle(&reg, b).unwrap());
        let prod = Path::interval(Target::Gm, ga.data()[0].mul(&gb.data()[0]).unwrap()).unwrap();
        let lhs = paths::rot(&prod, &zero).unwrap();
        prop_assert!(lhs.equals(&paths::rot(&ga, &zero).unwrap().add(&paths::rot(&gb, &zero).unwrap())));
    }
}

// ----------------------------------------------------------- subdivision

proptest! {
    #![proptest_config(config(20))]

    #[test]
    fn formal_chains_have_order_independent_normal_forms(seed in any::<u64>(), n in 1usize..=2, simplicial in any::<bool>()) {
        let kind = if simplicial { Kind::Simplicial } else { Kind::Cubical };
        let op = subdivision::subdivision(kind, n);
        let mut terms: Vec<_> = op.terms().iter().map(|(m, w)| (m.clone(), *w)).collect();
        terms.shuffle(&mut random::rng(seed));
        let shuffled = FormalChain::from_terms(kind, n, terms);
        prop_assert_eq!(shuffled.to_json(), op.to_json());
        prop_assert_eq!(shuffled.boundary().to_json(), op.boundary().to_json());
    }
}

#[test]
fn boundary_squares_to_zero_on_subdivision_operators() {
    for kind in [Kind::Simplicial, Kind::Cubical] {
        for n in 2..=3 {
            assert!(subdivision::subdivision(kind, n).boundary().boundary().is_empty(), "{kind} n={n}");
            assert!(subdivision::homotopy(kind, n).boundary().boundary().is_empty(), "{kind} n={n}");
        }
    }
}

#[test]
fn subdivision_is_a_chain_map() {
    for kind in [Kind::Simplicial, Kind::Cubical] {
        for n in 1..=3 {
            assert!(subdivision::chain_map_check(kind, n).pass, "{kind} n={n}");
        }
    }
}

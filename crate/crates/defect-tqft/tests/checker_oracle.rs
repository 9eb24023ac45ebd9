//! Checker equivalence: the table-driven evaluator for equations 2–7 must
//! agree — verdicts *and* witnesses — with an independently coded checker
//! for associativity, coassociativity and the four Frobenius-type
//! relations, on random rank-3 tensors.
//!
//! The oracle below is written directly against the map compositions
//! (vector-valued multiplication and comultiplication helpers), shares no
//! code with the equation table, and iterates the free indices in the same
//! lexicographic (q, r, s, t) order so first violations coincide.

use defect_tqft::frobenius_data::{check_equation, CheckId};
use defect_tqft::moves::Lcg64;
use defect_tqft::{AlgebraData, DefectData, ModuleData, Scalar, SystemData, Tensor3};

/// First violation of one of equations 2..=7 according to the oracle:
/// the free assignment and the two side values.
type Violation = Option<(Vec<usize>, Scalar, Scalar)>;

struct Oracle<'a> {
    n: usize,
    mult: &'a Tensor3,
    comult: &'a Tensor3,
}

impl Oracle<'_> {
    /// Coefficients of x·y as a vector.
    fn product(&self, x: usize, y: usize) -> Vec<Scalar> {
        (0..self.n).map(|u| self.mult.get(x, y, u).clone()).collect()
    }

    /// Coefficient of `out` in x·v for a vector v.
    fn mult_left(&self, x: usize, v: &[Scalar], out: usize) -> Scalar {
        let mut acc = Scalar::zero();
        for (u, coeff) in v.iter().enumerate() {
            if !coeff.is_zero() {
                acc += coeff * self.mult.get(x, u, out);
            }
        }
        acc
    }

    /// Coefficient of `out` in v·x for a vector v.
    fn mult_right(&self, v: &[Scalar], x: usize, out: usize) -> Scalar {
        let mut acc = Scalar::zero();
        for (u, coeff) in v.iter().enumerate() {
            if !coeff.is_zero() {
                acc += coeff * self.mult.get(u, x, out);
            }
        }
        acc
    }

    fn check(&self, id: u8) -> Violation {
        let n = self.n;
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    for t in 0..n {
                        let (lhs, rhs) = match id {
                            // Associativity: q·(t·s) = (q·t)·s at r.
                            2 => (
                                self.mult_left(q, &self.product(t, s), r),
                                self.mult_right(&self.product(q, t), s, r),
                            ),
                            // Coassociativity at r⊗s⊗t of the two
                            // prolongations of δ(q).
                            3 => {
                                let mut lhs = Scalar::zero();
                                let mut rhs = Scalar::zero();
                                for m in 0..n {
                                    lhs += &(self.comult.get(q, r, m).clone())
                                        * self.comult.get(m, s, t);
                                    rhs += &(self.comult.get(q, m, t).clone())
                                        * self.comult.get(m, r, s);
                                }
                                (lhs, rhs)
                            }
                            // Frobenius (μ⊗id)(id⊗δ)(q⊗t) = δ(q·t) at r⊗s.
                            4 => {
                                let mut lhs = Scalar::zero();
                                for m in 0..n {
                                    lhs += &(self.comult.get(t, m, s).clone())
                                        * self.mult.get(q, m, r);
                                }
                                (lhs, self.delta_of_product(q, t, r, s))
                            }
                            // Frobenius (id⊗μ)(δ⊗id)(q⊗t) = δ(q·t) at r⊗s.
                            5 => {
                                let mut lhs = Scalar::zero();
                                for m in 0..n {
                                    lhs += &(self.comult.get(q, r, m).clone())
                                        * self.mult.get(m, t, s);
                                }
                                (lhs, self.delta_of_product(q, t, r, s))
                            }
                            // (id ⊗ s·−)δ(q) = (−·s ⊗ id)δ(q) at r⊗t.
                            6 => {
                                let mut lhs = Scalar::zero();
                                let mut rhs = Scalar::zero();
                                for m in 0..n {
                                    lhs += &(self.comult.get(q, r, m).clone())
                                        * self.mult.get(s, m, t);
                                    rhs += &(self.comult.get(q, m, t).clone())
                                        * self.mult.get(m, s, r);
                                }
                                (lhs, rhs)
                            }
                            // q·δ(s) twisted: Σ_u a[q][u][r] ā[s][t][u]
                            // against (−·s ⊗ id)δ(q) at r⊗t.
                            7 => {
                                let mut lhs = Scalar::zero();
                                let mut rhs = Scalar::zero();
                                for m in 0..n {
                                    lhs += &(self.comult.get(s, t, m).clone())
                                        * self.mult.get(q, m, r);
                                    rhs += &(self.comult.get(q, m, t).clone())
                                        * self.mult.get(m, s, r);
                                }
                                (lhs, rhs)
                            }
                            _ => unreachable!(),
                        };
                        if lhs != rhs {
                            return Some((vec![q, r, s, t], lhs, rhs));
                        }
                    }
                }
            }
        }
        None
    }

    /// Coefficient of r⊗s in δ(q·t).
    fn delta_of_product(&self, q: usize, t: usize, r: usize, s: usize) -> Scalar {
        let mut acc = Scalar::zero();
        for (u, coeff) in self.product(q, t).iter().enumerate() {
            if !coeff.is_zero() {
                acc += coeff * self.comult.get(u, r, s);
            }
        }
        acc
    }
}

/// Wraps arbitrary dimension-2 (mult, comult) tensors into a system so the
/// table-driven checker can run; the module and defect parts are inert.
fn algebra_only_system(mult: Tensor3, comult: Tensor3) -> SystemData {
    let basis = vec!["x".to_owned(), "y".to_owned()];
    let unit = vec![Scalar::one(), Scalar::zero()];
    let counit = vec![Scalar::one(), Scalar::zero()];
    let algebra = AlgebraData::new(basis, mult, comult, unit, counit).unwrap();
    let module = ModuleData::new(
        vec!["p".to_owned()],
        Tensor3::zeros([1, 2, 1]),
        Tensor3::zeros([1, 1, 2]),
        2,
    )
    .unwrap();
    let defect = DefectData::new(
        vec!["c".to_owned()],
        Tensor3::zeros([1, 1, 1]),
        Tensor3::zeros([1, 1, 1]),
        1,
        None,
        Some(Scalar::one()),
    )
    .unwrap();
    SystemData::new(algebra, module, defect).unwrap()
}

fn random_tensor(rng: &mut Lcg64) -> Tensor3 {
    Tensor3::from_fn([2, 2, 2], |_, _, _| {
        // Small integers in -2..=2 so collisions (passing equations) and
        // violations both occur.
        Scalar::from_int((rng.next_u64() % 5) as i64 - 2)
    })
}

#[test]
fn table_checker_agrees_with_independent_oracle() {
    let mut rng = Lcg64::new(20_240_817);
    let mut checked = 0;
    for sample in 0..5 {
        let mult = random_tensor(&mut rng);
        let comult = random_tensor(&mut rng);
        let oracle = Oracle { n: 2, mult: &mult, comult: &comult };
        let expected: Vec<(u8, Violation)> =
            (2..=7).map(|id| (id, oracle.check(id))).collect();
        let system = algebra_only_system(mult.clone(), comult.clone());
        for (id, oracle_violation) in expected {
            let result = check_equation(&system, id).unwrap();
            assert_eq!(result.id, CheckId::Equation(id));
            match oracle_violation {
                None => {
                    assert!(result.passed, "sample {sample}, eq {id}: oracle passes");
                    assert!(result.witness.is_none());
                }
                Some((assignment, lhs, rhs)) => {
                    assert!(!result.passed, "sample {sample}, eq {id}: oracle fails");
                    let w = result.witness.expect("failed equation carries a witness");
                    let got: Vec<usize> = w.assignment.iter().map(|(_, v)| *v).collect();
                    assert_eq!(got, assignment, "sample {sample}, eq {id}: same tuple");
                    assert_eq!(
                        w.assignment.iter().map(|(n, _)| *n).collect::<Vec<_>>(),
                        vec!["q", "r", "s", "t"]
                    );
                    assert_eq!(w.lhs, lhs, "sample {sample}, eq {id}: same lhs");
                    assert_eq!(w.rhs, rhs, "sample {sample}, eq {id}: same rhs");
                }
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 30);
}

/// The checker is deterministic: identical inputs give identical results,
/// witnesses included.
#[test]
fn checker_is_deterministic() {
    let mut rng = Lcg64::new(99);
    let mult = random_tensor(&mut rng);
    let comult = random_tensor(&mut rng);
    let system = algebra_only_system(mult, comult);
    for id in 2..=7u8 {
        let a = check_equation(&system, id).unwrap();
        let b = check_equation(&system, id).unwrap();
        assert_eq!(a, b);
    }
}

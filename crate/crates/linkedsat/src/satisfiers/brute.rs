use crate::formula::{Assignment, Formula, Semantics};

use super::SatError;

/// Largest variable count accepted by the exhaustive routines.
pub const BRUTE_VAR_CAP: u32 = 26;

enum Checker {
    Masks(Vec<(u32, u32)>),
    Exact(Vec<Vec<(u32, bool)>>),
}

impl Checker {
    fn new(f: &Formula, sem: Semantics) -> Checker {
        match sem {
            Semantics::Cnf => Checker::Masks(
                f.clauses()
                    .iter()
                    .map(|c| {
                        let mut pos = 0u32;
                        let mut neg = 0u32;
                        for l in c {
                            let bit = 1u32 << (l.var - 1);
                            if l.negated {
                                neg |= bit;
                            } else {
                                pos |= bit;
                            }
                        }
                        (pos, neg)
                    })
                    .collect(),
            ),
            Semantics::OneInThree => Checker::Exact(
                f.clauses()
                    .iter()
                    .map(|c| c.iter().map(|l| (1u32 << (l.var - 1), l.negated)).collect())
                    .collect(),
            ),
        }
    }

    fn check(&self, a: u32) -> bool {
        match self {
            Checker::Masks(ms) => ms.iter().all(|&(p, n)| (a & p) | (!a & n) != 0),
            Checker::Exact(cs) => cs
                .iter()
                .all(|c| c.iter().filter(|&&(bit, neg)| (a & bit != 0) != neg).count() == 1),
        }
    }
}

fn cap(f: &Formula) -> Result<(), SatError> {
    if f.num_vars() > BRUTE_VAR_CAP {
        Err(SatError::VarCapExceeded { vars: f.num_vars(), cap: BRUTE_VAR_CAP })
    } else {
        Ok(())
    }
}

fn to_assignment(n: u32, a: u32) -> Assignment {
    Assignment::from_values((0..n).map(|i| a >> i & 1 == 1).collect())
}

/// First satisfying assignment in counting order (variable 1 is the low bit).
pub fn brute_solve(f: &Formula, sem: Semantics) -> Result<Option<Assignment>, SatError> {
    cap(f)?;
    let n = f.num_vars();
    let ch = Checker::new(f, sem);
    let total: u64 = 1 << n;
    Ok((0..total).map(|a| a as u32).find(|&a| ch.check(a)).map(|a| to_assignment(n, a)))
}

/// Exact number of satisfying assignments by enumeration.
pub fn brute_count(f: &Formula, sem: Semantics) -> Result<u64, SatError> {
    cap(f)?;
    let ch = Checker::new(f, sem);
    let total: u64 = 1 << f.num_vars();
    Ok((0..total).filter(|&a| ch.check(a as u32)).count() as u64)
}

/// All satisfying assignments, in counting order.
pub fn brute_models(f: &Formula, sem: Semantics) -> Result<Vec<Assignment>, SatError> {
    cap(f)?;
    let n = f.num_vars();
    let ch = Checker::new(f, sem);
    let total: u64 = 1 << n;
    Ok((0..total).map(|a| a as u32).filter(|&a| ch.check(a)).map(|a| to_assignment(n, a)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let f = Formula::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
        assert_eq!(brute_count(&f, Semantics::Cnf).unwrap(), 3);
        assert_eq!(brute_count(&f, Semantics::OneInThree).unwrap(), 2);
        assert_eq!(brute_count(&Formula::new(5), Semantics::Cnf).unwrap(), 32);
        let unsat = Formula::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        assert_eq!(brute_solve(&unsat, Semantics::Cnf).unwrap(), None);
    }

    #[test]
    fn cap_enforced() {
        let f = Formula::new(27);
        assert!(matches!(brute_count(&f, Semantics::Cnf), Err(SatError::VarCapExceeded { .. })));
    }

    #[test]
    fn duplicate_literals_in_one_in_three() {
        // Exactly one true literal in (x1, x1, x2) forces x1 = 0, x2 = 1.
        let f = Formula::from_dimacs_clauses(2, &[&[1, 1, 2]]).unwrap();
        assert_eq!(brute_count(&f, Semantics::OneInThree).unwrap(), 1);
    }
}

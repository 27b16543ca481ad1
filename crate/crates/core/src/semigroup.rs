//! Numerical (Weierstrass) semigroups: membership, gaps and conductor via
//! the Apery-set method, the smallest pole number prime to p, and candidate
//! jumps of the wild ramification filtration.
//!
//! Jumps are reported as *candidates*: if the filtration drops at `i`, then
//! `i + 1 = m - m_k + 1` for some pole number `m_k < m`, but not every
//! candidate must be realized; the curve module cross-checks realization for
//! the p-cyclic family. Only the p-part `G_1` is modeled, so the tame jump at
//! 0 never appears in a report.

use serde::Serialize;

use crate::error::{Error, Result};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Numerical semigroup given by generators with gcd 1.
#[derive(Clone, Debug, Serialize)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    conductor: u64,
    gaps: Vec<u64>,
    /// Apery vector: `apery[r]` is the smallest member congruent to `r`
    /// modulo the smallest generator.
    #[serde(skip)]
    apery: Vec<u64>,
}

impl NumericalSemigroup {
    /// Build the semigroup generated by `generators` (positive, gcd 1).
    pub fn new(generators: &[u64]) -> Result<Self> {
        let mut gens: Vec<u64> = generators.iter().copied().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() || generators.iter().any(|&g| g == 0) {
            return Err(Error::NotNumericalSemigroup);
        }
        let g = gens.iter().fold(0, |acc, &x| gcd(acc, x));
        if g != 1 {
            return Err(Error::NotNumericalSemigroup);
        }
        // Apery set with respect to the smallest generator a: shortest
        // nonnegative combination in each residue class mod a, by relaxation.
        let a = gens[0] as usize;
        let mut apery = vec![u64::MAX; a];
        apery[0] = 0;
        // Bellman-Ford style relaxation over the residue graph; at most a
        // rounds are needed.
        for _ in 0..a {
            let mut changed = false;
            for r in 0..a {
                if apery[r] == u64::MAX {
                    continue;
                }
                for &g in &gens[1..] {
                    let nr = (r + g as usize) % a;
                    let cand = apery[r] + g;
                    if cand < apery[nr] {
                        apery[nr] = cand;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        debug_assert!(apery.iter().all(|&v| v != u64::MAX));
        let frobenius = apery.iter().copied().max().unwrap();
        let conductor = if frobenius < a as u64 {
            0 // the semigroup is all of N
        } else {
            frobenius - a as u64 + 1
        };
        let mut gaps = Vec::new();
        for x in 1..conductor {
            if apery[(x % a as u64) as usize] > x {
                gaps.push(x);
            }
        }
        Ok(NumericalSemigroup {
            generators: gens,
            conductor,
            gaps,
            apery,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Smallest integer from which every integer is a member.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// The finitely many positive integers missing from the semigroup.
    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.apery[(x % self.generators[0]) as usize] <= x
    }

    /// Members up to and including `bound`, ascending.
    pub fn members_up_to(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&x| self.contains(x)).collect()
    }
}

/// The ramification data read off a Weierstrass semigroup: the smallest pole
/// number `m` prime to p, the pole numbers `m = m_0 > m_1 > ... > m_r = 0`
/// up to `m`, and the candidate filtration jumps `{m - m_k}`.
#[derive(Clone, Debug, Serialize)]
pub struct JumpReport {
    pub generators: Vec<u64>,
    pub p: u64,
    pub m: u64,
    pub poles_below: Vec<u64>,
    pub candidate_jumps: Vec<u64>,
}

/// Compute the jump report of `S` at the prime `p`.
///
/// When the semigroup is consistent with a p-group action (every nonzero
/// member below `m` divisible by p), every candidate jump is prime to p;
/// this is asserted on every report.
pub fn jump_report(s: &NumericalSemigroup, p: u64) -> Result<JumpReport> {
    let bound = s.conductor() + p + 1;
    let m = (1..=bound)
        .find(|&x| s.contains(x) && x % p != 0)
        .ok_or(Error::NoMemberPrimeToP)?;
    let mut poles_below: Vec<u64> = s.members_up_to(m);
    poles_below.reverse();
    let candidate_jumps: Vec<u64> = poles_below.iter().skip(1).map(|&mk| m - mk).collect();
    let p_group_consistent = poles_below
        .iter()
        .skip(1)
        .all(|&mk| mk == 0 || mk % p == 0);
    if p_group_consistent {
        assert!(
            candidate_jumps.iter().all(|&j| j % p != 0),
            "candidate jumps of a p-group semigroup must be prime to p"
        );
    }
    Ok(JumpReport {
        generators: s.generators().to_vec(),
        p,
        m,
        poles_below,
        candidate_jumps,
    })
}

/// The Weierstrass semigroup `<p, p^s + 1>` of the p-cyclic cover at the
/// point over infinity.
pub fn pcyclic_semigroup(p: u64, s: u32) -> NumericalSemigroup {
    NumericalSemigroup::new(&[p, p.pow(s) + 1]).expect("gcd(p, p^s+1) = 1")
}

/// Semigroup with members `{0} ∪ {x >= m0}` for `m0 >= 1`: the shape of the
/// Hermitian/Fermat Weierstrass semigroups used here.
pub fn tail_semigroup(m0: u64) -> NumericalSemigroup {
    assert!(m0 >= 1);
    let gens: Vec<u64> = (m0..2 * m0).collect();
    NumericalSemigroup::new(&gens).expect("consecutive run has gcd 1")
}

/// True iff every member of `S` up to `bound` lies in the semigroup generated
/// by the orbit sizes. This is the lifting criterion for the flag of
/// invariant modules: orbit-sum divisors must realize every pole number.
pub fn orbit_covers(orbit_sizes: &[u64], s: &NumericalSemigroup, bound: u64) -> bool {
    assert!(orbit_sizes.iter().all(|&c| c > 0), "orbit sizes are positive");
    // A singleton orbit generates all of N.
    if orbit_sizes.contains(&1) {
        return true;
    }
    // Reachability sieve for the orbit-generated semigroup up to bound.
    let b = bound as usize;
    let mut reachable = vec![false; b + 1];
    reachable[0] = true;
    for x in 1..=b {
        for &c in orbit_sizes {
            let c = c as usize;
            if c <= x && reachable[x - c] {
                reachable[x] = true;
                break;
            }
        }
    }
    s.members_up_to(bound).into_iter().all(|x| reachable[x as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semigroup_3_4() {
        // Oracle: direct sieve up to 3*4.
        let mut table = vec![false; 13];
        table[0] = true;
        for x in 1..13usize {
            if (x >= 3 && table[x - 3]) || (x >= 4 && table[x - 4]) {
                table[x] = true;
            }
        }
        let sieve_gaps: Vec<u64> = (1..13).filter(|&x| !table[x as usize]).collect();
        let s = NumericalSemigroup::new(&[3, 4]).unwrap();
        assert_eq!(s.gaps(), &sieve_gaps[..]);
        assert_eq!(s.gaps(), &[1, 2, 5]);
        assert_eq!(s.conductor(), 6);
    }

    #[test]
    fn natural_numbers() {
        let s = NumericalSemigroup::new(&[1]).unwrap();
        assert!(s.gaps().is_empty());
        assert_eq!(s.conductor(), 0);
        for x in 0..10 {
            assert!(s.contains(x));
        }
    }

    #[test]
    fn rejects_non_semigroups() {
        assert_eq!(
            NumericalSemigroup::new(&[2, 4]).unwrap_err(),
            Error::NotNumericalSemigroup
        );
        assert_eq!(
            NumericalSemigroup::new(&[]).unwrap_err(),
            Error::NotNumericalSemigroup
        );
        assert_eq!(
            NumericalSemigroup::new(&[0, 3]).unwrap_err(),
            Error::NotNumericalSemigroup
        );
    }

    #[test]
    fn pcyclic_members_below_first_prime_pole() {
        // <p, p^s+1> with p = 3, s = 2: members up to 10 are 0,3,6,9,10.
        let s = pcyclic_semigroup(3, 2);
        assert_eq!(s.members_up_to(10), vec![0, 3, 6, 9, 10]);
    }

    #[test]
    fn jump_reports_for_pcyclic_family() {
        for (p, s) in [(3u64, 1u32), (3, 2), (5, 1)] {
            let sem = pcyclic_semigroup(p, s);
            let report = jump_report(&sem, p).unwrap();
            assert_eq!(report.m, p.pow(s) + 1);
            let expected: Vec<u64> = (0..=p.pow(s - 1)).map(|k| 1 + k * p).collect();
            assert_eq!(report.candidate_jumps, expected, "(p,s)=({p},{s})");
            // dim L(mP) = r + 1 = p^(s-1) + 2
            assert_eq!(report.poles_below.len() as u64, p.pow(s - 1) + 2);
        }
    }

    #[test]
    fn hermitian_jump_report() {
        // Members {0, 3, 4, 5, ...}: m = 4, jumps {1, 4}.
        let s = tail_semigroup(3);
        assert_eq!(s.members_up_to(5), vec![0, 3, 4, 5]);
        let report = jump_report(&s, 3).unwrap();
        assert_eq!(report.m, 4);
        assert_eq!(report.poles_below, vec![4, 3, 0]);
        assert_eq!(report.candidate_jumps, vec![1, 4]);
    }

    #[test]
    fn trivial_semigroup_jump_report() {
        let s = NumericalSemigroup::new(&[1]).unwrap();
        let report = jump_report(&s, 3).unwrap();
        assert_eq!(report.m, 1);
        assert_eq!(report.candidate_jumps, vec![1]);
    }

    #[test]
    fn membership_monotone_under_adding_generators() {
        let small = NumericalSemigroup::new(&[3, 4]).unwrap();
        let big = NumericalSemigroup::new(&[3, 4, 5]).unwrap();
        for x in 0..30 {
            if small.contains(x) {
                assert!(big.contains(x));
            }
        }
    }

    #[test]
    fn orbit_coverage() {
        let s = NumericalSemigroup::new(&[3, 4]).unwrap();
        // A singleton orbit generates N.
        assert!(orbit_covers(&[1, 3], &s, 20));
        // Orbits of size 3 only cannot reach the member 4.
        assert!(!orbit_covers(&[3], &s, 20));
        // Identical generators trivially cover.
        assert!(orbit_covers(&[3, 4], &s, 20));
    }
}

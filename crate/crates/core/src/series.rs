//! Inverting coordinate systems `u_k = u_k(x)` whose linear parts are independent.
//!
//! The inverse expresses each lead variable through the new coordinates. It is a
//! polynomial for triangular systems and a truncated power series otherwise.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Ambient, Polynomial, Substitution};
use crate::rational::Rational;

/// `σ` with `σ(u_k) = x_{lead_k}`, where the new coordinate `u_k` reuses the name of its
/// lead variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateInverse {
    substitution: Substitution,
    /// `None` when exact; otherwise images are correct modulo terms of this total degree.
    precision: Option<u32>,
}

impl CoordinateInverse {
    pub fn substitution(&self) -> &Substitution {
        &self.substitution
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// Applies the inverse, truncating when it is a series.
    pub fn apply(&self, f: &Polynomial, cap: u32) -> Result<Polynomial> {
        match self.precision {
            None => self.substitution.apply(f, cap),
            Some(p) => self.substitution.apply_truncated(f, p),
        }
    }
}

fn invert_matrix(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = &a[col][c] * &f;
                    a[r][c] = &a[r][c] - v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

struct System<'a> {
    ambient: &'a Ambient,
    leads: &'a [usize],
    ainv: Vec<Vec<Rational>>,
    rest: Vec<Polynomial>,
    targets: Vec<Polynomial>,
}

impl System<'_> {
    /// Whether no lead depends on itself through the nonlinear parts, in which case the
    /// fixed-point iteration terminates with a polynomial.
    fn is_acyclic(&self) -> bool {
        let n = self.leads.len();
        let deps: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| {
                        self.ainv[i]
                            .iter()
                            .zip(&self.rest)
                            .any(|(c, r)| !c.is_zero() && r.involves(self.leads[j]))
                    })
                    .collect()
            })
            .collect();
        // Kahn's algorithm on the dependency graph.
        let mut indeg: Vec<usize> = deps.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(j) = ready.pop() {
            seen += 1;
            for i in 0..n {
                if deps[i].contains(&j) {
                    indeg[i] -= 1;
                    if indeg[i] == 0 {
                        ready.push(i);
                    }
                }
            }
        }
        seen == n
    }

    fn step(&self, v: &[Polynomial], precision: Option<u32>, cap: u32) -> Result<Vec<Polynomial>> {
        let pairs: Vec<(usize, Polynomial)> =
            self.leads.iter().cloned().zip(v.iter().cloned()).collect();
        let sub = Substitution::with_images(self.ambient, &pairs)?;
        let rhs: Vec<Polynomial> = self
            .rest
            .iter()
            .zip(&self.targets)
            .map(|(r, t)| {
                let rv = match precision {
                    None => sub.apply(r, cap)?,
                    Some(p) => sub.apply_truncated(r, p)?,
                };
                Ok(t - &rv)
            })
            .collect::<Result<_>>()?;
        Ok(self
            .ainv
            .iter()
            .map(|row| {
                let mut acc = Polynomial::zero(self.ambient);
                for (c, p) in row.iter().zip(&rhs) {
                    if !c.is_zero() {
                        acc = &acc + &p.scale(c);
                    }
                }
                match precision {
                    None => acc,
                    Some(p) => acc.truncated(p),
                }
            })
            .collect())
    }
}

/// Inverts the coordinate system `u_k` with lead variables `leads[k]`.
///
/// `targets[k]` is the value assigned to the new coordinate `u_k`: usually the variable
/// `x_{lead_k}` itself, or zero to solve `u = 0` for the leads.
fn solve(
    ambient: &Ambient,
    coords: &[Polynomial],
    leads: &[usize],
    targets: Vec<Polynomial>,
    precision: u32,
    cap: u32,
) -> Result<(Vec<Polynomial>, Option<u32>)> {
    let n = coords.len();
    if leads.len() != n {
        return Err(Error::ArityMismatch { expected: n, found: leads.len() });
    }
    if coords.iter().any(|c| c.ambient() != ambient) {
        return Err(Error::AmbientMismatch);
    }
    if coords.iter().any(|c| !c.constant_term().is_zero()) {
        return Err(Error::Unrepresentable("coordinate does not vanish at the origin".to_string()));
    }
    let lin: Vec<Vec<Rational>> = coords.iter().map(Polynomial::linear_part).collect();
    let a: Vec<Vec<Rational>> =
        lin.iter().map(|row| leads.iter().map(|&j| row[j].clone()).collect()).collect();
    let ainv = invert_matrix(&a)
        .ok_or_else(|| Error::Unrepresentable("coordinate linear parts are dependent".to_string()))?;
    let rest: Vec<Polynomial> = coords
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut r = c.clone();
            for (j, &l) in leads.iter().enumerate() {
                if !a[k][j].is_zero() {
                    r = &r - &Polynomial::var(ambient, l).scale(&a[k][j]);
                }
            }
            r
        })
        .collect();
    let sys = System { ambient, leads, ainv, rest, targets };
    let start: Vec<Polynomial> = leads.iter().map(|_| Polynomial::zero(ambient)).collect();

    // Triangular systems stabilise after at most n + 1 exact rounds.
    let mut v = start.clone();
    let mut exact = None;
    // Cyclic systems rarely have polynomial solutions; only cheap ones are tried.
    let exact_cap = if sys.is_acyclic() {
        cap
    } else {
        coords.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0).min(cap)
    };
    for _ in 0..=n + 1 {
        match sys.step(&v, None, exact_cap) {
            Ok(next) => {
                if next == v {
                    exact = Some(next);
                    break;
                }
                v = next;
            }
            Err(Error::DegreeCap { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    if let Some(v) = exact {
        return Ok((v, None));
    }
    let mut v = start;
    for _ in 0..=precision {
        let next = sys.step(&v, Some(precision), cap)?;
        if next == v {
            return Ok((v, Some(precision)));
        }
        v = next;
    }
    Err(Error::Internal("fixed-point iteration did not stabilise".to_string()))
}

/// The inverse `σ` of the coordinate system `coords` with the given lead variables.
pub fn invert_coordinates(
    ambient: &Ambient,
    coords: &[Polynomial],
    leads: &[usize],
    precision: u32,
    cap: u32,
) -> Result<CoordinateInverse> {
    let targets = leads.iter().map(|&l| Polynomial::var(ambient, l)).collect();
    let (images, precision) = solve(ambient, coords, leads, targets, precision, cap)?;
    let pairs: Vec<(usize, Polynomial)> = leads.iter().cloned().zip(images).collect();
    Ok(CoordinateInverse { substitution: Substitution::with_images(ambient, &pairs)?, precision })
}

/// Solves `coords = 0` for the lead variables: the map `lead_k ↦ φ_k(others)`
/// parametrising the common zero locus.
pub fn solve_for_leads(
    ambient: &Ambient,
    coords: &[Polynomial],
    leads: &[usize],
    precision: u32,
    cap: u32,
) -> Result<CoordinateInverse> {
    let targets = leads.iter().map(|_| Polynomial::zero(ambient)).collect();
    let (images, precision) = solve(ambient, coords, leads, targets, precision, cap)?;
    let pairs: Vec<(usize, Polynomial)> = leads.iter().cloned().zip(images).collect();
    Ok(CoordinateInverse { substitution: Substitution::with_images(ambient, &pairs)?, precision })
}

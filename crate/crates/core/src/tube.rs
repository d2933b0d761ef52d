//! Tube algebras `base ⊗ ℚ[t_1, …, t_n]/Q` with `Q` nilpotent, and their relation to
//! integral centers and weighted blowups.
//!
//! Quotients are computed in the local ring at the origin. Once `m^D ⊆ Q`, the algebra is the
//! finite-dimensional space of polynomials of degree below `D` modulo the ℚ-span of the
//! truncated multiples of the relations, so membership and ranks are linear algebra.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use crate::blowup::{minimal_at_least, rees_generators, strict_transform, WeightedChart};
use crate::center::CenterPresentation;
use crate::error::{Error, Result};
use crate::invariant::multiorder;
use crate::mord::{is_in_mord, split_mord_gt1, LatticeIdeal, MultiOrder};
use crate::oracle::monomial_center_oracle;
use crate::poly::{Ambient, ExponentVector, LinearSpan, PolyIdeal, Polynomial, Substitution};
use crate::rational::Rational;
use crate::series::invert_coordinates;

/// Largest nilpotency degree searched for.
const NIL_CAP: u32 = 40;

fn monomials_of_degree(n: usize, k: u32) -> Vec<ExponentVector> {
    fn rec(j: usize, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if j + 1 == n {
            cur.push(left);
            out.push(ExponentVector::new(cur.clone()));
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(j + 1, n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(ExponentVector::new(Vec::new()));
        }
        return out;
    }
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn monomials_below(n: usize, d: u32) -> Vec<ExponentVector> {
    (0..d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

/// `ℚ[[t]]/Q` for an ideal `Q` containing a power of the maximal ideal.
#[derive(Clone, Debug)]
struct Artinian {
    ambient: Ambient,
    relations: Vec<Polynomial>,
    nil: u32,
    span: LinearSpan,
}

fn relation_span(ambient: &Ambient, relations: &[Polynomial], below: u32) -> LinearSpan {
    let mut span = LinearSpan::new();
    for g in relations {
        let ord = g.order().finite().unwrap_or(below);
        if ord >= below {
            continue;
        }
        for m in monomials_below(ambient.len(), below - ord) {
            span.insert(&g.mul_monomial(&m, &Rational::one()).truncated(below));
        }
    }
    span
}

impl Artinian {
    fn new(ambient: &Ambient, relations: &[Polynomial]) -> Result<Self> {
        if relations.iter().any(|g| g.ambient() != ambient) {
            return Err(Error::AmbientMismatch);
        }
        if relations.iter().any(|g| !g.constant_term().is_zero()) {
            return Err(Error::NotATube("a relation is a unit".to_string()));
        }
        let n = ambient.len();
        for d in 1..=NIL_CAP {
            // Nakayama: m^d ⊆ Q + m^{d+1} already gives m^d ⊆ Q locally.
            let wide = relation_span(ambient, relations, d + 1);
            let nilpotent = monomials_of_degree(n, d)
                .into_iter()
                .all(|e| wide.contains(&Polynomial::monomial(ambient, e, Rational::one())));
            if nilpotent {
                return Ok(Artinian {
                    ambient: ambient.clone(),
                    relations: relations.to_vec(),
                    nil: d,
                    span: relation_span(ambient, relations, d),
                });
            }
        }
        Err(Error::NotATube("relations are not nilpotent within the degree cap".to_string()))
    }

    fn contains(&self, f: &Polynomial) -> bool {
        self.span.contains(&f.truncated(self.nil))
    }

    fn dim(&self) -> usize {
        monomials_below(self.ambient.len(), self.nil).len() - self.span.rank()
    }

    /// `dim A/m^k`.
    fn quotient_dim(&self, k: u32) -> usize {
        let k = k.min(self.nil);
        monomials_below(self.ambient.len(), k).len() - relation_span(&self.ambient, &self.relations, k).rank()
    }

    /// Rank of the images of `fs` in the algebra.
    fn rank_of(&self, fs: &[Polynomial]) -> usize {
        let mut span = self.span.clone();
        fs.iter().filter(|f| span.insert(&f.truncated(self.nil))).count()
    }
}

fn linear_rank(ambient: &Ambient, fs: &[Polynomial]) -> usize {
    let mut span = LinearSpan::new();
    fs.iter()
        .filter(|f| {
            let lin = f.homogeneous_part(1);
            span.insert(&lin)
        })
        .count()
        .min(ambient.len())
}

fn power_product(ps: &[Polynomial], a: &ExponentVector, cap: u32) -> Result<Polynomial> {
    let ambient = ps.first().map(Polynomial::ambient).ok_or(Error::ArityMismatch { expected: 1, found: 0 })?;
    let mut m = Polynomial::one(ambient);
    for (p, &k) in ps.iter().zip(a.entries()) {
        if k > 0 {
            m = m.try_mul(&p.pow(k, cap)?)?;
        }
    }
    Ok(m)
}

/// A tube algebra: nilpotent variables modulo relations, with designated parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeAlgebra {
    base: Vec<String>,
    ambient: Ambient,
    relations: Vec<Polynomial>,
    params: Vec<Polynomial>,
    width: MultiOrder,
}

fn check_width(d: &MultiOrder) -> Result<()> {
    if d.is_empty() || !is_in_mord(d) || d.entries().iter().any(|q| *q <= Rational::one()) {
        return Err(Error::NotATube(format!("width {d} is not in Mord with all entries above 1")));
    }
    Ok(())
}

fn parameter_names(n: usize, base: &[String]) -> Vec<String> {
    let mut names = Vec::new();
    for k in 0..n {
        let mut name = if n == 1 { "t".to_string() } else { format!("t{}", k + 1) };
        while base.contains(&name) {
            name.push('\'');
        }
        names.push(name);
    }
    names
}

/// The constant tube `base ⊗ ℚ[t]/(t^{I_d})`.
pub fn constant_tube(d: &MultiOrder, base: &[String]) -> Result<TubeAlgebra> {
    constant_tube_named(d, base, &parameter_names(d.len(), base))
}

/// [`constant_tube`] with chosen parameter names.
pub fn constant_tube_named(d: &MultiOrder, base: &[String], names: &[String]) -> Result<TubeAlgebra> {
    check_width(d)?;
    if names.len() != d.len() {
        return Err(Error::ArityMismatch { expected: d.len(), found: names.len() });
    }
    let ambient = Ambient::new(names.iter().cloned());
    let lattice = LatticeIdeal::new(d)?;
    let relations = lattice
        .minimal_generators()
        .iter()
        .map(|a| Polynomial::monomial(&ambient, a.clone(), Rational::one()))
        .collect();
    let params = (0..d.len()).map(|i| Polynomial::var(&ambient, i)).collect();
    Ok(TubeAlgebra { base: base.to_vec(), ambient, relations, params, width: d.clone() })
}

impl TubeAlgebra {
    /// An algebra from relations and parameters; the width is computed.
    pub fn from_presentation(
        base: &[String],
        ambient: &Ambient,
        relations: Vec<Polynomial>,
        params: Vec<Polynomial>,
    ) -> Result<Self> {
        let mut a = TubeAlgebra {
            base: base.to_vec(),
            ambient: ambient.clone(),
            relations,
            params,
            width: MultiOrder::empty(),
        };
        a.width = width(&a)?;
        Ok(a)
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn params(&self) -> &[Polynomial] {
        &self.params
    }

    pub fn width(&self) -> &MultiOrder {
        &self.width
    }

    /// Rank as a free module over the base.
    pub fn rank(&self) -> Result<usize> {
        Ok(Artinian::new(&self.ambient, &self.relations)?.dim())
    }

    /// Exponents of the basis monomials in the parameters: `ℕ^n ∖ I_d`.
    pub fn basis(&self) -> Result<Vec<ExponentVector>> {
        Ok(LatticeIdeal::new(&self.width)?.complement())
    }

    /// `dim gr^k A` for `k = 0, 1, …` with respect to the maximal ideal.
    pub fn graded_ranks(&self) -> Result<Vec<usize>> {
        let art = Artinian::new(&self.ambient, &self.relations)?;
        Ok((0..art.nil).map(|k| art.quotient_dim(k + 1) - art.quotient_dim(k)).collect())
    }

    /// The same algebra after the automorphism `σ` of the presentation ring.
    pub fn transform(&self, sigma: &Substitution) -> Result<TubeAlgebra> {
        if sigma.source() != &self.ambient || sigma.target() != &self.ambient {
            return Err(Error::AmbientMismatch);
        }
        let cap = crate::DEFAULT_DEGREE_CAP;
        let relations = self.relations.iter().map(|g| sigma.apply(g, cap)).collect::<Result<_>>()?;
        let params = self.params.iter().map(|g| sigma.apply(g, cap)).collect::<Result<_>>()?;
        TubeAlgebra::from_presentation(&self.base, &self.ambient, relations, params)
    }

    /// The same algebra with different designated parameters.
    pub fn with_parameters(&self, params: Vec<Polynomial>) -> Result<TubeAlgebra> {
        TubeAlgebra::from_presentation(&self.base, &self.ambient, self.relations.clone(), params)
    }

    /// `ν(f) = max{r : f ∈ F_r}` capped at 1, where `F_r` is spanned by the parameter
    /// monomials `p^a` with `a·d^{-1} ≥ r`.
    pub fn filtration_level(&self, f: &Polynomial) -> Result<Rational> {
        let art = Artinian::new(&self.ambient, &self.relations)?;
        let leads = independent_leads(&self.params)?;
        let inv = invert_coordinates(&self.ambient, &self.params, &leads, art.nil, crate::DEFAULT_DEGREE_CAP)?;
        let g = inv.apply(f, crate::DEFAULT_DEGREE_CAP)?.truncated(art.nil);
        let w = self.width.weights();
        let one = Rational::one();
        let mut level = one.clone();
        for (e, _) in g.terms() {
            let a = ExponentVector::new(leads.iter().map(|&l| e.get(l)).collect());
            let v = a.dot(&w);
            if v < level {
                level = v;
            }
        }
        Ok(level)
    }
}

fn independent_leads(params: &[Polynomial]) -> Result<Vec<usize>> {
    let n = params.first().map_or(0, |p| p.ambient().len());
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut leads: Vec<usize> = Vec::new();
    for p in params {
        let mut row: Vec<Rational> = p.linear_part();
        for (l, r) in leads.iter().zip(&rows) {
            let f = row[*l].clone();
            if !f.is_zero() {
                for j in 0..n {
                    row[j] = &row[j] - &r[j] * &f;
                }
            }
        }
        let lead = (0..n)
            .find(|&j| !row[j].is_zero())
            .ok_or_else(|| Error::NotATube("parameters are not a conormal basis".to_string()))?;
        let inv = row[lead].recip();
        rows.push(row.iter().map(|q| q * &inv).collect());
        leads.push(lead);
    }
    Ok(leads)
}

/// Checks the split-tube conditions for `params` with the claimed width:
/// (0) the parameters generate the maximal ideal, (1) `p^a = 0` for `a ∈ I_d`, and
/// (2) the monomials `p^a`, `a ∉ I_d`, are linearly independent.
pub fn verify_split_tube(a: &TubeAlgebra, params: &[Polynomial], width: &MultiOrder) -> Result<bool> {
    if params.iter().any(|p| p.ambient() != &a.ambient) {
        return Err(Error::AmbientMismatch);
    }
    if params.len() != width.len() || check_width(width).is_err() {
        return Ok(false);
    }
    let art = Artinian::new(&a.ambient, &a.relations)?;
    let mut all = params.to_vec();
    all.extend(a.relations.iter().cloned());
    if linear_rank(&a.ambient, &all) != a.ambient.len() {
        return Ok(false);
    }
    let lattice = LatticeIdeal::new(width)?;
    let cap = crate::DEFAULT_DEGREE_CAP;
    for g in lattice.minimal_generators() {
        if !art.contains(&power_product(params, g, cap)?) {
            return Ok(false);
        }
    }
    let basis = lattice
        .complement()
        .iter()
        .map(|e| power_product(params, e, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(art.rank_of(&basis) == basis.len())
}

/// The width of a tube, read off from the monomials in its parameters that vanish.
pub fn width(a: &TubeAlgebra) -> Result<MultiOrder> {
    let art = Artinian::new(&a.ambient, &a.relations)?;
    let n = a.params.len();
    if n == 0 {
        return Err(Error::NotATube("no parameters".to_string()));
    }
    let cap = crate::DEFAULT_DEGREE_CAP;
    let names = Ambient::new((0..n).map(|i| format!("p{i}")));
    let mut vanishing = Vec::new();
    for k in 1..=art.nil {
        for e in monomials_of_degree(n, k) {
            if vanishing.iter().any(|v: &ExponentVector| v.divides(&e)) {
                continue;
            }
            if art.contains(&power_product(&a.params, &e, cap)?) {
                vanishing.push(e);
            }
        }
    }
    let monomial = PolyIdeal::monomial(&names, &vanishing);
    let d = monomial_center_oracle(&monomial)?.mord;
    if d.len() != n || check_width(&d).is_err() {
        return Err(Error::NotATube("vanishing monomials do not form a lattice ideal".to_string()));
    }
    let mut expected = LatticeIdeal::new(&d)?.minimal_generators().to_vec();
    let mut found = vanishing;
    expected.sort();
    found.sort();
    if expected != found || !verify_split_tube(a, &a.params, &d)? {
        return Err(Error::NotATube("parameters do not split the algebra".to_string()));
    }
    Ok(d)
}

/// Whether `candidate` is a tuple of nilpotent parameters: a conormal basis with
/// `ν(c_i) ≥ 1/d_i`.
pub fn parameter_check(a: &TubeAlgebra, candidate: &[Polynomial]) -> Result<bool> {
    if candidate.len() != a.width.len() {
        return Ok(false);
    }
    if candidate.iter().any(|p| p.ambient() != &a.ambient) {
        return Err(Error::AmbientMismatch);
    }
    if candidate.iter().any(|p| !p.constant_term().is_zero()) {
        return Ok(false);
    }
    let mut all = candidate.to_vec();
    all.extend(a.relations.iter().cloned());
    if linear_rank(&a.ambient, &all) != a.ambient.len() {
        return Ok(false);
    }
    for (c, d) in candidate.iter().zip(a.width.entries()) {
        if a.filtration_level(c)? < d.recip() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A tube inside an ambient ring: `V = V(s, t^{I_d})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedTube {
    pub ideal: PolyIdeal,
    pub s_part: Vec<Polynomial>,
    pub t_part: Vec<Polynomial>,
    pub width: MultiOrder,
    pub algebra: TubeAlgebra,
}

impl EmbeddedTube {
    /// The tube `V(s, t^{I_d})` for given coordinates.
    pub fn new(ambient: &Ambient, s_part: Vec<Polynomial>, t_part: Vec<Polynomial>, width: &MultiOrder) -> Result<Self> {
        check_width(width)?;
        if t_part.len() != width.len() {
            return Err(Error::ArityMismatch { expected: width.len(), found: t_part.len() });
        }
        let cap = crate::DEFAULT_DEGREE_CAP;
        let mut gens = s_part.clone();
        for a in LatticeIdeal::new(width)?.minimal_generators() {
            gens.push(power_product(&t_part, a, cap)?);
        }
        let ideal = PolyIdeal::new(ambient, gens)?;
        let center = Self::center_of(ambient, &s_part, &t_part, width)?;
        let base: Vec<String> = center.free_variables().iter().map(|&i| ambient.name(i).to_string()).collect();
        let names: Vec<String> = center.leads()[s_part.len()..].iter().map(|&l| ambient.name(l).to_string()).collect();
        let algebra = constant_tube_named(width, &base, &names)?;
        Ok(EmbeddedTube { ideal, s_part, t_part, width: width.clone(), algebra })
    }

    fn center_of(ambient: &Ambient, s: &[Polynomial], t: &[Polynomial], d: &MultiOrder) -> Result<CenterPresentation> {
        let t_block = t.iter().cloned().zip(d.entries().iter().cloned()).collect();
        CenterPresentation::from_coordinates(ambient, s.to_vec(), t_block, crate::DEFAULT_DEGREE_CAP)
    }

    /// The center `[s | t^d]` of this presentation.
    pub fn center(&self) -> Result<CenterPresentation> {
        Self::center_of(self.ideal.ambient(), &self.s_part, &self.t_part, &self.width)
    }
}

/// The tube of an integral center: `V(rounding(J))`, of width `mord(J)_{>1}`.
pub fn tube_center_correspondence(j: &CenterPresentation) -> Result<EmbeddedTube> {
    if !j.is_integral() {
        return Err(Error::NonIntegral);
    }
    let (ones, width) = split_mord_gt1(&j.multiorder())?;
    let coords = j.coordinates();
    EmbeddedTube::new(j.ambient(), coords[..ones].to_vec(), coords[ones..].to_vec(), &width)
}

/// The inverse correspondence: the canonical center of the tube's ideal.
pub fn center_of_tube(ideal: &PolyIdeal) -> Result<CenterPresentation> {
    Ok(multiorder(ideal)?.center)
}

/// Result of [`tight_presentation_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightVerdict {
    /// `e_Z − e_V`, the difference of embedding dimensions at the origin.
    pub gap: usize,
    pub s_count: usize,
    /// The s-part has exactly `gap` elements.
    pub consistent: bool,
    /// `V` has a presentation without s-part.
    pub tight: bool,
}

/// Compares the s-part of a presentation of `V ⊆ Z` with the cotangent gap `e_Z − e_V`.
pub fn tight_presentation_check(
    z: &PolyIdeal,
    s_part: &[Polynomial],
    t_part: &[Polynomial],
    d: &MultiOrder,
) -> Result<TightVerdict> {
    let ambient = z.ambient();
    if z.is_unit_at_origin() {
        return Err(Error::Unrepresentable("Z does not contain the origin".to_string()));
    }
    let v = EmbeddedTube::new(ambient, s_part.to_vec(), t_part.to_vec(), d)?;
    let n = ambient.len();
    let e_z = n - linear_rank(ambient, z.generators());
    let e_v = n - linear_rank(ambient, v.ideal.generators());
    if e_v > e_z {
        return Err(Error::Unrepresentable("V is not contained in Z".to_string()));
    }
    let gap = e_z - e_v;
    Ok(TightVerdict { gap, s_count: s_part.len(), consistent: gap == s_part.len(), tight: gap == 0 })
}

/// Minimal monomials `t^a` with `N·Σ a_j/d_j ≥ n`, over the tube's t-part.
pub fn tubular_rees_piece(v: &EmbeddedTube, root: u32, n: u32) -> Result<Vec<ExponentVector>> {
    if !v.s_part.is_empty() {
        return Err(Error::NotATube("tubular Rees algebras need a tight presentation".to_string()));
    }
    if root == 0 {
        return Err(Error::InvalidRoot);
    }
    Ok(minimal_at_least(&v.width.weights(), &Rational::new(n.into(), root.into())))
}

fn monomial_ideal_sum(ambient: &Ambient, parts: &[&[Polynomial]]) -> Result<Vec<ExponentVector>> {
    let gens: Vec<Polynomial> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
    let ideal = PolyIdeal::new(ambient, gens)?;
    if !ideal.is_monomial() {
        return Err(Error::Unrepresentable("restriction check needs monomial data".to_string()));
    }
    let mut m = ideal.minimal_monomials()?;
    m.sort();
    Ok(m)
}

/// Degree by degree up to `max_degree`, compares the restriction of the Rees algebra of
/// `J^{1/N}` to `Z` with the tubular Rees algebra of `V`.
pub fn rees_restriction_check(
    j: &CenterPresentation,
    z: &PolyIdeal,
    v: &EmbeddedTube,
    root: u32,
    max_degree: u32,
) -> Result<bool> {
    let ambient = j.ambient();
    if z.ambient() != ambient || v.ideal.ambient() != ambient {
        return Err(Error::AmbientMismatch);
    }
    let pieces = rees_generators(j, root)?;
    let cap = j.degree_cap();
    for n in 0..=max_degree.min(root) {
        let lhs: Vec<Polynomial> = pieces[n as usize]
            .iter()
            .map(|a| power_product(j.coordinates(), a, cap))
            .collect::<Result<_>>()?;
        let rhs: Vec<Polynomial> = tubular_rees_piece(v, root, n)?
            .iter()
            .map(|a| power_product(&v.t_part, a, cap))
            .collect::<Result<_>>()?;
        let l = monomial_ideal_sum(ambient, &[&lhs, z.generators()])?;
        let r = monomial_ideal_sum(ambient, &[&rhs, z.generators()])?;
        if l != r {
            return Ok(false);
        }
    }
    Ok(true)
}

fn normalized(mut gens: Vec<Polynomial>) -> Vec<Polynomial> {
    gens = gens.iter().filter(|g| !g.is_zero()).map(Polynomial::monic).collect();
    gens.sort_by(|a, b| format!("{a}").cmp(&format!("{b}")));
    gens.dedup();
    gens
}

/// Chart by chart, compares the tubular blowup of `V ⊆ Z` (the elements `f/s^{n(f)}` with
/// `n(f) = N·ν_J(f)`) with the strict transform of `Z` under the weighted blowup of the
/// center `J` of `V`.
pub fn tubular_blowup_check(z: &PolyIdeal, v: &EmbeddedTube, root: u32) -> Result<bool> {
    let j = v.center()?;
    if z.ambient() != j.ambient() {
        return Err(Error::AmbientMismatch);
    }
    for chart in WeightedChart::all(&j, root)? {
        let strict = strict_transform(z, &chart)?;
        let s = chart.exceptional_variable();
        let mut tubular = Vec::new();
        for f in z.generators() {
            let Some(nu) = j.nu(f)?.finite().cloned() else { continue };
            let n = nu * Rational::from_integer(root.into());
            if !n.is_integer() {
                return Err(Error::Unrepresentable("fractional Rees degree".to_string()));
            }
            let k = n.to_integer().try_into().map_err(|_| Error::DegreeCap { cap: u32::MAX })?;
            let g = chart.pullback(f)?.div_var_power(s, k).ok_or(Error::InexactDivision)?;
            tubular.push(g);
        }
        if normalized(tubular) != normalized(strict.generators().to_vec()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `inv(V) = (width, |V|)`: widths compare lexicographically, supports by inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeInvariant {
    pub width: MultiOrder,
    /// Labels of the closed sets making up the support.
    pub support: Vec<String>,
}

impl PartialOrd for TubeInvariant {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.width.cmp(&other.width) {
            Ordering::Equal => {
                let sub = self.support.iter().all(|s| other.support.contains(s));
                let sup = other.support.iter().all(|s| self.support.contains(s));
                match (sub, sup) {
                    (true, true) => Some(Ordering::Equal),
                    (true, false) => Some(Ordering::Less),
                    (false, true) => Some(Ordering::Greater),
                    (false, false) => None,
                }
            }
            o => Some(o),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{collect_variables, parse_ideal, parse_polynomial};
    use crate::rational::{int, rat};
    use alloc::vec;

    fn m(v: &[Rational]) -> MultiOrder {
        MultiOrder::new(v.to_vec()).unwrap()
    }

    #[test]
    fn constant_tube_ranks() {
        let t = constant_tube(&m(&[int(2)]), &[]).unwrap();
        assert_eq!(t.rank().unwrap(), 2);
        assert_eq!(t.basis().unwrap().len(), 2);
        assert_eq!(constant_tube(&m(&[int(5), int(7)]), &[]).unwrap().rank().unwrap(), 23);
        let t = constant_tube(&m(&[int(2), int(2)]), &[]).unwrap();
        assert_eq!(t.rank().unwrap(), 3);
        assert_eq!(t.relations().len(), 3);
        assert!(constant_tube(&m(&[int(1), int(2)]), &[]).is_err());
    }

    #[test]
    fn graded_ranks_match_level_counts() {
        let d = m(&[int(3), int(4)]);
        let t = constant_tube(&d, &["x".to_string()]).unwrap();
        let ranks = t.graded_ranks().unwrap();
        let comp = LatticeIdeal::new(&d).unwrap().complement();
        for (k, r) in ranks.iter().enumerate() {
            assert_eq!(*r, comp.iter().filter(|e| e.degree() as usize == k).count());
        }
    }

    #[test]
    fn split_tube_verification() {
        let t = constant_tube(&m(&[int(3)]), &["x".to_string()]).unwrap();
        assert!(verify_split_tube(&t, t.params(), &m(&[int(3)])).unwrap());
        assert!(!verify_split_tube(&t, t.params(), &m(&[int(2)])).unwrap());
        let t = constant_tube(&m(&[int(5), int(7)]), &[]).unwrap();
        assert!(verify_split_tube(&t, t.params(), &m(&[int(5), int(7)])).unwrap());
        assert_eq!(width(&t).unwrap(), m(&[int(5), int(7)]));
    }

    #[test]
    fn parameters() {
        let t = constant_tube(&m(&[int(2), int(3)]), &[]).unwrap();
        let a = t.ambient().clone();
        let p = |s: &str| parse_polynomial(s, &a, 64).unwrap();
        assert!(parameter_check(&t, &[p("t1 + t2^2"), p("t2")]).unwrap());
        assert!(!parameter_check(&t, &[p("t2"), p("t1")]).unwrap());
        assert!(parameter_check(&t, t.params()).unwrap());
        let moved = t.with_parameters(vec![p("t1 + t2^2"), p("t2")]).unwrap();
        assert_eq!(moved.width(), t.width());
    }

    #[test]
    fn correspondence() {
        let a = Ambient::new(["x", "y"]);
        let j = CenterPresentation::parse("[x^5, y^7]", &a, 64).unwrap();
        let v = tube_center_correspondence(&j).unwrap();
        assert_eq!(v.width, m(&[int(5), int(7)]));
        assert_eq!(v.algebra.rank().unwrap(), 23);
        assert!(center_of_tube(&v.ideal).unwrap().same_center(&j).unwrap());

        let a2 = Ambient::new(["s", "x"]);
        let j = CenterPresentation::parse("[s | x^2]", &a2, 64).unwrap();
        let v = tube_center_correspondence(&j).unwrap();
        assert_eq!(v.width, m(&[int(2)]));

        let v = EmbeddedTube::new(&a, vec![], vec![Polynomial::var(&a, 0), Polynomial::var(&a, 1)], &m(&[int(5), rat(15, 2)]))
            .unwrap();
        assert_eq!(format!("{}", center_of_tube(&v.ideal).unwrap()), "[x^5, y^(15/2)]");
        let j = CenterPresentation::parse("[x^5, y^(15/2)]", &a, 64).unwrap();
        assert_eq!(tube_center_correspondence(&j).unwrap().width, m(&[int(5), rat(15, 2)]));
        let j = CenterPresentation::parse("[x^2, y^(5/2)]", &a, 64).unwrap();
        assert_eq!(tube_center_correspondence(&j).unwrap_err(), Error::NonIntegral);
    }

    #[test]
    fn tightness() {
        let a = Ambient::new(["x", "y"]);
        let x = Polynomial::var(&a, 0);
        let y = Polynomial::var(&a, 1);
        let z = parse_ideal("y^2", &a, 64).unwrap();
        let v = tight_presentation_check(&z, &[], core::slice::from_ref(&y), &m(&[int(2)])).unwrap();
        assert!(v.tight && v.consistent);
        let plane = PolyIdeal::zero(&a);
        let v = tight_presentation_check(&plane, core::slice::from_ref(&x), core::slice::from_ref(&y), &m(&[int(2)])).unwrap();
        assert_eq!(v.gap, 1);
        assert!(v.consistent && !v.tight);
        let v = tight_presentation_check(&plane, &[], &[x, y], &m(&[int(2), int(3)])).unwrap();
        assert!(v.tight);
    }

    #[test]
    fn rees_pieces_and_restriction() {
        let a = Ambient::new(["x"]);
        let v = EmbeddedTube::new(&a, vec![], vec![Polynomial::var(&a, 0)], &m(&[int(2)])).unwrap();
        assert_eq!(tubular_rees_piece(&v, 2, 1).unwrap(), vec![ExponentVector::new(vec![1])]);
        assert_eq!(tubular_rees_piece(&v, 2, 0).unwrap(), vec![ExponentVector::new(vec![0])]);

        let a = Ambient::new(["x", "y"]);
        let j = CenterPresentation::parse("[x^2, y^3]", &a, 64).unwrap();
        let v = tube_center_correspondence(&j).unwrap();
        let z = j.rounding().unwrap();
        assert!(rees_restriction_check(&j, &z, &v, 6, 6).unwrap());
        assert!(rees_restriction_check(&j, &PolyIdeal::zero(&a), &v, 6, 6).unwrap());
        let wrong = EmbeddedTube::new(&a, vec![], v.t_part.clone(), &m(&[int(2), int(5)])).unwrap();
        assert!(!rees_restriction_check(&j, &z, &wrong, 6, 6).unwrap());
    }

    #[test]
    fn tubular_blowups() {
        let s = "y^2 - x^3";
        let a = Ambient::new(collect_variables(s).unwrap());
        let z = parse_ideal(s, &a, 64).unwrap();
        let j = multiorder(&z).unwrap().center;
        let v = tube_center_correspondence(&j).unwrap();
        assert!(tubular_blowup_check(&z, &v, 6).unwrap());
        assert!(tubular_blowup_check(&PolyIdeal::zero(&a), &v, 6).unwrap());
        let z = parse_ideal("x^2*y", &a, 64).unwrap();
        let v = EmbeddedTube::new(&a, vec![], vec![Polynomial::var(&a, 0)], &m(&[int(2)])).unwrap();
        assert!(tubular_blowup_check(&z, &v, 2).unwrap());
    }

    #[test]
    fn invariant_order() {
        let w = m(&[int(2), int(3)]);
        let a = TubeInvariant { width: w.clone(), support: vec!["origin".into()] };
        let b = TubeInvariant { width: w.clone(), support: vec!["origin".into(), "z-axis".into()] };
        let c = TubeInvariant { width: w, support: vec!["w-axis".into()] };
        assert!(a < b);
        assert_eq!(a.partial_cmp(&c), None);
        let d = TubeInvariant { width: m(&[int(3)]), support: vec![] };
        assert!(a < d);
    }
}

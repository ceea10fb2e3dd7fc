//! The growth series recursions over the subset lattice: Chiswell's
//! recursion for the standard growth series, the amalgam identity, the
//! Möbius inverse over vertex subsets, and the conjugacy growth series
//! recursion built on the necklace transform.

use crate::graph::{GraphSpec, VertexSubset};
use crate::rational::RationalSeries;
use crate::series::{neck, SeriesError, TruncatedSeries};
use std::collections::HashMap;
use std::sync::Mutex;

/// A standard growth series value: a rational closed form when every
/// vertex series involved is rational, a truncated expansion otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum SigmaForm {
    Rational(RationalSeries),
    Truncated(TruncatedSeries),
}

impl SigmaForm {
    pub fn expand(&self, cap: usize) -> Result<TruncatedSeries, SeriesError> {
        match self {
            SigmaForm::Rational(r) => r.expand(cap),
            SigmaForm::Truncated(t) => Ok(t.truncate(cap)),
        }
    }

    pub fn as_rational(&self) -> Option<&RationalSeries> {
        match self {
            SigmaForm::Rational(r) => Some(r),
            SigmaForm::Truncated(_) => None,
        }
    }

    fn one() -> Self {
        SigmaForm::Rational(RationalSeries::one())
    }

    fn binop(
        &self,
        other: &SigmaForm,
        cap: usize,
        rat: impl Fn(&RationalSeries, &RationalSeries) -> Result<RationalSeries, SeriesError>,
        trunc: impl Fn(&TruncatedSeries, &TruncatedSeries) -> Result<TruncatedSeries, SeriesError>,
    ) -> Result<SigmaForm, SeriesError> {
        match (self, other) {
            (SigmaForm::Rational(a), SigmaForm::Rational(b)) => Ok(SigmaForm::Rational(rat(a, b)?)),
            _ => Ok(SigmaForm::Truncated(trunc(&self.expand(cap)?, &other.expand(cap)?)?)),
        }
    }

    fn add(&self, o: &SigmaForm, cap: usize) -> Result<SigmaForm, SeriesError> {
        self.binop(o, cap, |a, b| Ok(a.add(b)), |a, b| Ok(a.add(b)))
    }

    fn sub(&self, o: &SigmaForm, cap: usize) -> Result<SigmaForm, SeriesError> {
        self.binop(o, cap, |a, b| Ok(a.sub(b)), |a, b| Ok(a.sub(b)))
    }

    fn mul(&self, o: &SigmaForm, cap: usize) -> Result<SigmaForm, SeriesError> {
        self.binop(o, cap, |a, b| Ok(a.mul(b)), |a, b| Ok(a.mul(b)))
    }

    fn div(&self, o: &SigmaForm, cap: usize) -> Result<SigmaForm, SeriesError> {
        self.binop(o, cap, |a, b| a.div(b), |a, b| a.div(b))
    }
}

/// Solves 1/sigma_A = 1/sigma_G + 1/sigma_K - 1/sigma_H for the growth
/// series of the amalgamated product G *_H K.
pub fn amalgam_sigma(
    sigma_g: &RationalSeries,
    sigma_k: &RationalSeries,
    sigma_h: &RationalSeries,
) -> Result<RationalSeries, SeriesError> {
    let num = sigma_g.mul(sigma_k).mul(sigma_h);
    let den = sigma_k.mul(sigma_h).add(&sigma_g.mul(sigma_h)).sub(&sigma_g.mul(sigma_k));
    num.div(&den)
}

/// Memoizing evaluator for the growth series of one graph product at a
/// fixed truncation degree. All series values are deterministic, so
/// recomputation races through the cache would be benign.
pub struct GrowthEngine<'g> {
    graph: &'g GraphSpec,
    degree: usize,
    /// Forces the pivot choice for the top-level (full vertex set) call.
    top_pivot: Option<usize>,
    sigma_cache: Mutex<HashMap<u64, SigmaForm>>,
    conj_cache: Mutex<HashMap<u64, TruncatedSeries>>,
    mobius_cache: Mutex<HashMap<u64, TruncatedSeries>>,
}

impl<'g> GrowthEngine<'g> {
    pub fn new(graph: &'g GraphSpec, degree: usize) -> Self {
        GrowthEngine {
            graph,
            degree,
            top_pivot: None,
            sigma_cache: Mutex::new(HashMap::new()),
            conj_cache: Mutex::new(HashMap::new()),
            mobius_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_top_pivot(graph: &'g GraphSpec, degree: usize, pivot: usize) -> Self {
        let mut e = Self::new(graph, degree);
        e.top_pivot = Some(pivot);
        e
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Minimum-degree vertex of the induced subgraph, ties broken by
    /// declaration order. Any pivot gives the same series; the small link
    /// keeps the subset sum over Lk(v) short.
    fn pivot(&self, s: VertexSubset) -> usize {
        if let Some(p) = self.top_pivot {
            if s == self.graph.full_set() && s.contains(p) {
                return p;
            }
        }
        s.iter()
            .min_by_key(|&v| (self.graph.degree_within(v, s), v))
            .expect("pivot of nonempty subset")
    }

    /// Standard growth series of the subgraph product on `s`, by
    /// Chiswell's recursion.
    pub fn sigma(&self, s: VertexSubset) -> Result<SigmaForm, SeriesError> {
        if let Some(hit) = self.sigma_cache.lock().unwrap().get(&s.0) {
            return Ok(hit.clone());
        }
        let value = self.sigma_uncached(s)?;
        self.sigma_cache.lock().unwrap().insert(s.0, value.clone());
        Ok(value)
    }

    fn sigma_uncached(&self, s: VertexSubset) -> Result<SigmaForm, SeriesError> {
        let d = self.degree;
        if s.is_empty() {
            return Ok(SigmaForm::one());
        }
        if s.len() == 1 {
            let v = s.iter().next().unwrap();
            let kind = &self.graph.vertex(v).group;
            return Ok(match kind.sigma_rational() {
                Some(r) => SigmaForm::Rational(r),
                None => SigmaForm::Truncated(kind.sigma_truncated(d)?),
            });
        }
        if self.graph.is_complete(s) {
            let mut acc = SigmaForm::one();
            for v in s.iter() {
                acc = acc.mul(&self.sigma(VertexSubset::singleton(v))?, d)?;
            }
            return Ok(acc);
        }
        let v = self.pivot(s);
        let lk = self.graph.neighbours(v).intersect(s);
        let a = self.sigma(lk)?;
        let b = self.sigma(s.remove(v))?;
        let c = self.sigma(VertexSubset::singleton(v))?;
        // sigma_s = (a b c) / (a c + b - b c)
        let num = a.mul(&b, d)?.mul(&c, d)?;
        let den = a.mul(&c, d)?.add(&b, d)?.sub(&b.mul(&c, d)?, d)?;
        num.div(&den, d)
    }

    fn sigma_expanded(&self, s: VertexSubset) -> Result<TruncatedSeries, SeriesError> {
        self.sigma(s)?.expand(self.degree)
    }

    /// Conjugacy growth series of the subgraph product on `s`, truncated
    /// at the engine degree.
    pub fn sigma_conj(&self, s: VertexSubset) -> Result<TruncatedSeries, SeriesError> {
        if let Some(hit) = self.conj_cache.lock().unwrap().get(&s.0) {
            return Ok(hit.clone());
        }
        let value = self.sigma_conj_uncached(s)?;
        self.conj_cache.lock().unwrap().insert(s.0, value.clone());
        Ok(value)
    }

    fn sigma_conj_uncached(&self, s: VertexSubset) -> Result<TruncatedSeries, SeriesError> {
        let d = self.degree;
        if s.is_empty() {
            return Ok(TruncatedSeries::one(d));
        }
        if s.len() == 1 {
            let v = s.iter().next().unwrap();
            return self.graph.vertex(v).group.sigma_conj_truncated(d);
        }
        let v = self.pivot(s);
        let lk = self.graph.neighbours(v).intersect(s);
        let conj_v = self.sigma_conj(VertexSubset::singleton(v))?;
        if self.graph.is_cone_vertex_within(v, s) {
            return Ok(self.sigma_conj(lk)?.mul(&conj_v));
        }
        let one = TruncatedSeries::one(d);
        let sigma_v_minus_1 = self.sigma_expanded(VertexSubset::singleton(v))?.sub(&one);
        let mut total = self.sigma_conj(s.remove(v))?;
        total = total.add(&self.sigma_conj(lk)?.mul(&conj_v.sub(&one)));
        for sub in lk.subsets() {
            let weight = self.mobius_conj(sub)?;
            let transversal = self.transversal_series(s, v, sub)?;
            let arg = transversal.mul(&sigma_v_minus_1);
            debug_assert!(arg.constant_term() == &num_bigint::BigInt::from(0));
            if arg.has_negative_coeff() {
                return Err(SeriesError::NegativeCoefficient);
            }
            total = total.add(&weight.mul(&neck(&arg)?));
        }
        Ok(total)
    }

    /// Möbius inverse over the subset lattice: the contribution of
    /// conjugacy classes supported on exactly `s`.
    pub fn mobius_conj(&self, s: VertexSubset) -> Result<TruncatedSeries, SeriesError> {
        if let Some(hit) = self.mobius_cache.lock().unwrap().get(&s.0) {
            return Ok(hit.clone());
        }
        let mut total = TruncatedSeries::zero(self.degree);
        let parity = s.len();
        for sub in s.subsets() {
            let term = self.sigma_conj(sub)?;
            if (parity - sub.len()) % 2 == 0 {
                total = total.add(&term);
            } else {
                total = total.sub(&term);
            }
        }
        self.mobius_cache.lock().unwrap().insert(s.0, total.clone());
        Ok(total)
    }

    /// Growth series of the nonempty admissible-transversal representatives
    /// supported in Lk(S): sigma_{Lk(S) minus v} / sigma_{Lk(v) cap Lk(S)} - 1,
    /// links taken inside the induced subgraph on `s`.
    pub fn transversal_series(
        &self,
        s: VertexSubset,
        v: usize,
        sub: VertexSubset,
    ) -> Result<TruncatedSeries, SeriesError> {
        debug_assert!(s.contains(v) && sub.is_subset_of(self.graph.neighbours(v).intersect(s)));
        let lk_sub = self.graph.link_within(sub, s);
        let lk_v = self.graph.neighbours(v).intersect(s);
        let numer = self.sigma_expanded(lk_sub.remove(v))?;
        let denom = self.sigma_expanded(lk_v.intersect(lk_sub))?;
        Ok(numer.div(&denom)?.sub(&TruncatedSeries::one(self.degree)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path4, GraphSpec, GroupKind, Vertex, VertexSubset};

    fn dinf() -> GraphSpec {
        let vertices = vec![
            Vertex { name: "a".into(), group: GroupKind::Cyclic(2) },
            Vertex { name: "b".into(), group: GroupKind::Cyclic(2) },
        ];
        GraphSpec::new(vertices, &[]).unwrap()
    }

    #[test]
    fn sigma_path4_closed_form() {
        let g = path4();
        let engine = GrowthEngine::new(&g, 12);
        let sigma = engine.sigma(g.full_set()).unwrap();
        let expected = RationalSeries::from_i64(&[1, 2, 1], &[1, -2]).unwrap();
        assert_eq!(sigma.as_rational().unwrap(), &expected);
    }

    #[test]
    fn sigma_dinf_closed_form() {
        let g = dinf();
        let engine = GrowthEngine::new(&g, 12);
        let sigma = engine.sigma(g.full_set()).unwrap();
        let expected = RationalSeries::from_i64(&[1, 1], &[1, -1]).unwrap();
        assert_eq!(sigma.as_rational().unwrap(), &expected);
    }

    #[test]
    fn sigma_empty_is_one() {
        let g = path4();
        let engine = GrowthEngine::new(&g, 8);
        assert_eq!(engine.sigma(VertexSubset::EMPTY).unwrap(), SigmaForm::one());
    }

    #[test]
    fn amalgam_examples() {
        let one_z = RationalSeries::from_i64(&[1, 1], &[1]).unwrap();
        let one = RationalSeries::one();
        // Z/2 * Z/2 -> (1+z)/(1-z)
        let d = amalgam_sigma(&one_z, &one_z, &one).unwrap();
        assert_eq!(d, RationalSeries::from_i64(&[1, 1], &[1, -1]).unwrap());
        // amalgamating the whole group is the group
        let k = RationalSeries::from_i64(&[1, 2, 1], &[1, -2]).unwrap();
        assert_eq!(amalgam_sigma(&k, &k, &k).unwrap(), k);
        // F2 = Z * Z -> 1 + 4z + 12z^2 + 36z^3
        let z_series = RationalSeries::from_i64(&[1, 1], &[1, -1]).unwrap();
        let f2 = amalgam_sigma(&z_series, &z_series, &one).unwrap();
        assert_eq!(
            f2.expand(3).unwrap(),
            TruncatedSeries::from_i64(&[1, 4, 12, 36], 3)
        );
    }

    #[test]
    fn chiswell_matches_amalgam_decomposition() {
        // sigma_s == amalgam(sigma_{s minus v}, sigma_{Lk(v)} * sigma_v, sigma_{Lk(v)})
        let g = path4();
        let engine = GrowthEngine::new(&g, 12);
        let s = g.full_set();
        for v in 0..4 {
            let lk = g.neighbours(v).intersect(s);
            let s_minus = engine.sigma(s.remove(v)).unwrap().as_rational().unwrap().clone();
            let s_lk = engine.sigma(lk).unwrap().as_rational().unwrap().clone();
            let s_v = engine
                .sigma(VertexSubset::singleton(v))
                .unwrap()
                .as_rational()
                .unwrap()
                .clone();
            let direct = engine.sigma(s).unwrap().as_rational().unwrap().clone();
            let via_amalgam = amalgam_sigma(&s_minus, &s_lk.mul(&s_v), &s_lk).unwrap();
            assert_eq!(direct, via_amalgam, "pivot v{}", v + 1);
        }
    }

    #[test]
    fn sigma_conj_dinf() {
        let g = dinf();
        let engine = GrowthEngine::new(&g, 8);
        let conj = engine.sigma_conj(g.full_set()).unwrap();
        let expected = RationalSeries::from_i64(&[1, 2, 0, -2], &[1, 0, -1])
            .unwrap()
            .expand(8)
            .unwrap();
        assert_eq!(conj, expected);
    }

    #[test]
    fn sigma_conj_path4_matches_closed_form() {
        let g = path4();
        let engine = GrowthEngine::new(&g, 16);
        let conj = engine.sigma_conj(g.full_set()).unwrap();
        // (1+4z+3z^2-2z^3-3z^4)/(1-z^2) + neck(2z^2/(1-z))
        let rational_part = RationalSeries::from_i64(&[1, 4, 3, -2, -3], &[1, 0, -1])
            .unwrap()
            .expand(16)
            .unwrap();
        let neck_arg = RationalSeries::from_i64(&[0, 0, 2], &[1, -1])
            .unwrap()
            .expand(16)
            .unwrap();
        let expected = rational_part.add(&neck(&neck_arg).unwrap());
        assert_eq!(conj, expected);
    }

    #[test]
    fn sigma_conj_cone_case_is_product() {
        // star with order-2 leaves: center is a cone vertex
        let vertices = (0..4)
            .map(|i| Vertex { name: format!("v{}", i), group: GroupKind::Cyclic(2) })
            .collect();
        let star = GraphSpec::new(vertices, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let engine = GrowthEngine::new(&star, 10);
        let whole = engine.sigma_conj(star.full_set()).unwrap();
        let lk = engine.sigma_conj(VertexSubset(0b1110)).unwrap();
        let center = engine.sigma_conj(VertexSubset::singleton(0)).unwrap();
        assert_eq!(whole, lk.mul(&center));
    }

    #[test]
    fn mobius_examples() {
        let g = path4();
        let engine = GrowthEngine::new(&g, 8);
        assert_eq!(engine.mobius_conj(VertexSubset::EMPTY).unwrap(), TruncatedSeries::one(8));
        // S = {v2}: 1 + z - 1 = z
        assert_eq!(
            engine.mobius_conj(VertexSubset::singleton(1)).unwrap(),
            TruncatedSeries::monomial(1, 8)
        );
        // single infinite cyclic vertex: (1+z)/(1-z) - 1 = 2z/(1-z)
        let z_graph = GraphSpec::new(
            vec![Vertex { name: "a".into(), group: GroupKind::InfiniteCyclic }],
            &[],
        )
        .unwrap();
        let e2 = GrowthEngine::new(&z_graph, 6);
        assert_eq!(
            e2.mobius_conj(VertexSubset::singleton(0)).unwrap(),
            TruncatedSeries::from_i64(&[0, 2, 2, 2, 2, 2, 2], 6)
        );
    }

    #[test]
    fn mobius_resummation() {
        // sum over subsets of the Moebius inverses recovers sigma_conj
        let g = path4();
        let engine = GrowthEngine::new(&g, 10);
        for s in g.full_set().subsets() {
            let mut acc = TruncatedSeries::zero(10);
            for sub in s.subsets() {
                acc = acc.add(&engine.mobius_conj(sub).unwrap());
            }
            assert_eq!(acc, engine.sigma_conj(s).unwrap());
        }
    }

    #[test]
    fn transversal_examples() {
        let g = path4();
        let engine = GrowthEngine::new(&g, 8);
        let s = g.full_set();
        // v = v1, S = empty: 2z/(1-z)
        let t = engine.transversal_series(s, 0, VertexSubset::EMPTY).unwrap();
        assert_eq!(t, TruncatedSeries::from_i64(&[0, 2, 2, 2, 2, 2, 2, 2, 2], 8));
        // v = v1, S = {v2}: sigma_{v3}/sigma_empty - 1 = z
        let t = engine.transversal_series(s, 0, VertexSubset::singleton(1)).unwrap();
        assert_eq!(t, TruncatedSeries::monomial(1, 8));
    }

    #[test]
    fn transversal_zero_when_links_coincide() {
        // complete graph on two vertices: Lk(S) minus v equals Lk(v) cap Lk(S)
        let vertices = vec![
            Vertex { name: "a".into(), group: GroupKind::Cyclic(2) },
            Vertex { name: "b".into(), group: GroupKind::Cyclic(2) },
        ];
        let g = GraphSpec::new(vertices, &[(0, 1)]).unwrap();
        let engine = GrowthEngine::new(&g, 6);
        let t = engine
            .transversal_series(g.full_set(), 0, VertexSubset::singleton(1))
            .unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn pivot_independence_sigma() {
        let g = path4();
        let baseline = GrowthEngine::new(&g, 12);
        let expected = baseline.sigma(g.full_set()).unwrap();
        let expected_conj = baseline.sigma_conj(g.full_set()).unwrap();
        for v in 0..4 {
            let forced = GrowthEngine::with_top_pivot(&g, 12, v);
            assert_eq!(forced.sigma(g.full_set()).unwrap(), expected);
            assert_eq!(forced.sigma_conj(g.full_set()).unwrap(), expected_conj);
        }
    }

    #[test]
    fn direct_product_multiplicativity() {
        // complete graph: sigma_conj is the product of the vertex series
        let vertices = vec![
            Vertex { name: "a".into(), group: GroupKind::Cyclic(2) },
            Vertex { name: "b".into(), group: GroupKind::Cyclic(3) },
            Vertex { name: "c".into(), group: GroupKind::InfiniteCyclic },
        ];
        let g = GraphSpec::new(vertices, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let engine = GrowthEngine::new(&g, 10);
        let whole = engine.sigma_conj(g.full_set()).unwrap();
        let mut prod = TruncatedSeries::one(10);
        for v in 0..3 {
            prod = prod.mul(&engine.sigma_conj(VertexSubset::singleton(v)).unwrap());
        }
        assert_eq!(whole, prod);
    }

    #[test]
    fn sigma_conj_nonnegative() {
        let g = path4();
        let engine = GrowthEngine::new(&g, 16);
        for s in g.full_set().subsets() {
            assert!(!engine.sigma_conj(s).unwrap().has_negative_coeff());
        }
    }

    #[test]
    fn admissibility_identity() {
        // sigma_{s minus v} = sigma_{Lk(v)} * (transversal + 1)
        let g = path4();
        let engine = GrowthEngine::new(&g, 12);
        let s = g.full_set();
        for v in 0..4 {
            let lk = g.neighbours(v).intersect(s);
            let lhs = engine.sigma(s.remove(v)).unwrap().expand(12).unwrap();
            let t = engine.transversal_series(s, v, VertexSubset::EMPTY).unwrap();
            let rhs = engine
                .sigma(lk)
                .unwrap()
                .expand(12)
                .unwrap()
                .mul(&t.add(&TruncatedSeries::one(12)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn custom_vertex_series_degrade_to_truncated() {
        use crate::graph::CustomSeries;
        use num_bigint::BigInt;
        // free product of Z/2 with a custom copy of Z/2 given by coefficients
        let custom = CustomSeries::Coeffs(vec![BigInt::from(1), BigInt::from(1)]);
        let vertices = vec![
            Vertex { name: "a".into(), group: GroupKind::Cyclic(2) },
            Vertex {
                name: "b".into(),
                group: GroupKind::Custom { sigma: custom.clone(), sigma_conj: custom },
            },
        ];
        let g = GraphSpec::new(vertices, &[]).unwrap();
        let engine = GrowthEngine::new(&g, 6);
        let sigma = engine.sigma(g.full_set()).unwrap();
        assert!(sigma.as_rational().is_none());
        assert_eq!(
            sigma.expand(6).unwrap(),
            TruncatedSeries::from_i64(&[1, 2, 2, 2, 2, 2, 2], 6)
        );
    }
}

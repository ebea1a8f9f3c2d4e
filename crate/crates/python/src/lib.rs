//! Python bindings for `ordagg-core`.
//!
//! Ranks are plain integers; reflection values are signed ranks. Subsets are
//! given either as `"{a,b}"` strings or as sequences of element names.

use ordagg_core::aggregation::{self, Variant};
use ordagg_core::interval::{sqcap_family, sqcup_family};
use ordagg_core::measure::{self, ChainKind};
use ordagg_core::spec::{Function, SpecFile};
use ordagg_core::{metrics, Chain, CommFn, GroundSet, Interval, LatticeFn, Measure, RFn, RInterval, ReflChain, Subset};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

trait OrRaise<T> {
    fn py(self) -> PyResult<T>;
}

impl<T, E: std::fmt::Display> OrRaise<T> for Result<T, E> {
    fn py(self) -> PyResult<T> {
        self.map_err(err)
    }
}

fn variant(v: &str) -> PyResult<Variant> {
    v.parse().py()
}

#[pyclass(name = "Chain", module = "ordagg", frozen)]
struct PyChain(Chain);

#[pymethods]
impl PyChain {
    #[new]
    #[pyo3(signature = (name, size=None, labels=None))]
    fn new(name: &str, size: Option<usize>, labels: Option<Vec<String>>) -> PyResult<Self> {
        match (size, labels) {
            (_, Some(l)) => Chain::with_labels(name, l).py().map(PyChain),
            (Some(n), None) => Chain::new(name, n).py().map(PyChain),
            (None, None) => Err(PyValueError::new_err("need size or labels")),
        }
    }

    /// The grid `{0, 1/steps, ..., 1}`.
    #[staticmethod]
    fn grid(name: &str, steps: usize) -> PyResult<Self> {
        Chain::grid(name, steps).py().map(PyChain)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    fn label(&self, rank: usize) -> PyResult<String> {
        self.0.check_rank(rank).py()?;
        Ok(self.0.label(rank))
    }

    fn rank_of(&self, label: &str) -> Option<usize> {
        self.0.rank_of(label)
    }

    fn __len__(&self) -> usize {
        self.0.size()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Chain({:?}, size={})", self.0.name(), self.0.size())
    }
}

#[pyclass(name = "ReflChain", module = "ordagg", frozen)]
struct PyReflChain(ReflChain);

#[pymethods]
impl PyReflChain {
    /// `half` is `n` for the carrier `-n..=n`.
    #[new]
    #[pyo3(signature = (name, half=None, labels=None))]
    fn new(name: &str, half: Option<usize>, labels: Option<Vec<String>>) -> PyResult<Self> {
        match (half, labels) {
            (_, Some(l)) => ReflChain::with_labels(name, l).py().map(PyReflChain),
            (Some(n), None) => ReflChain::new(name, n).py().map(PyReflChain),
            (None, None) => Err(PyValueError::new_err("need half or labels")),
        }
    }

    #[staticmethod]
    fn grid(name: &str, steps: usize) -> PyResult<Self> {
        ReflChain::grid(name, steps).py().map(PyReflChain)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    #[getter]
    fn half(&self) -> i64 {
        self.0.half()
    }

    fn label(&self, srank: i64) -> PyResult<String> {
        self.0.check_srank(srank).py()?;
        Ok(self.0.label(srank))
    }

    fn srank_of(&self, label: &str) -> Option<i64> {
        self.0.srank_of(label)
    }

    fn positive_half(&self) -> PyChain {
        PyChain(self.0.positive_half())
    }

    fn negative_half(&self) -> PyChain {
        PyChain(self.0.negative_half())
    }

    fn svee(&self, x: i64, y: i64) -> PyResult<i64> {
        Ok(self.0.elem(x).py()?.svee(&self.0.elem(y).py()?).py()?.srank())
    }

    fn striangle(&self, x: i64, y: i64) -> PyResult<i64> {
        Ok(self.0.elem(x).py()?.striangle(&self.0.elem(y).py()?).py()?.srank())
    }

    fn dist(&self, x: i64, y: i64) -> PyResult<i64> {
        Ok(self.0.elem(x).py()?.dist(&self.0.elem(y).py()?).py()?.srank())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("ReflChain({:?}, half={})", self.0.name(), self.0.half())
    }
}

#[pyclass(name = "Interval", module = "ordagg", frozen)]
struct PyInterval(Interval);

#[pymethods]
impl PyInterval {
    #[new]
    fn new(chain: &PyChain, lo: usize, hi: usize) -> PyResult<Self> {
        Interval::new(&chain.0, lo, hi).py().map(PyInterval)
    }

    #[getter]
    fn lo(&self) -> usize {
        self.0.lo()
    }

    #[getter]
    fn hi(&self) -> usize {
        self.0.hi()
    }

    #[getter]
    fn chain(&self) -> PyChain {
        PyChain(self.0.chain().clone())
    }

    fn sqcup(&self, other: &Self) -> PyResult<Self> {
        self.0.sqcup(&other.0).py().map(PyInterval)
    }

    fn sqcap(&self, other: &Self) -> PyResult<Self> {
        self.0.sqcap(&other.0).py().map(PyInterval)
    }

    /// Topkis order `⊑`.
    fn leq(&self, other: &Self) -> PyResult<bool> {
        self.0.leq(&other.0).py()
    }

    /// One of `"less"`, `"equal"`, `"greater"`, `"incomparable"`.
    fn topkis_cmp(&self, other: &Self) -> PyResult<&'static str> {
        Ok(self.0.topkis_cmp(&other.0).py()?.as_str())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Interval({}, {}, {:?})", self.0.lo(), self.0.hi(), self.0.chain().name())
    }
}

#[pyfunction]
fn sqcup_all(intervals: Vec<PyRef<'_, PyInterval>>) -> PyResult<PyInterval> {
    let v: Vec<Interval> = intervals.iter().map(|i| i.0.clone()).collect();
    sqcup_family(&v).py().map(PyInterval)
}

#[pyfunction]
fn sqcap_all(intervals: Vec<PyRef<'_, PyInterval>>) -> PyResult<PyInterval> {
    let v: Vec<Interval> = intervals.iter().map(|i| i.0.clone()).collect();
    sqcap_family(&v).py().map(PyInterval)
}

#[pyclass(name = "RInterval", module = "ordagg", frozen)]
struct PyRInterval(RInterval);

#[pymethods]
impl PyRInterval {
    #[new]
    fn new(chain: &PyReflChain, lo: i64, hi: i64) -> PyResult<Self> {
        RInterval::from_sranks(&chain.0, lo, hi).py().map(PyRInterval)
    }

    #[getter]
    fn lo(&self) -> i64 {
        self.0.lo_srank()
    }

    #[getter]
    fn hi(&self) -> i64 {
        self.0.hi_srank()
    }

    /// `"positive"`, `"neutral"` or `"negative"`.
    #[getter]
    fn half(&self) -> &'static str {
        match self.0.half() {
            ordagg_core::interval::Half::Positive => "positive",
            ordagg_core::interval::Half::Neutral => "neutral",
            ordagg_core::interval::Half::Negative => "negative",
        }
    }

    fn svee(&self, other: &Self) -> PyResult<Self> {
        self.0.svee(&other.0).py().map(PyRInterval)
    }

    fn refl(&self) -> Self {
        PyRInterval(self.0.refl())
    }

    fn leq(&self, other: &Self) -> PyResult<bool> {
        self.0.leq(&other.0).py()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RInterval({}, {})", self.0.lo_srank(), self.0.hi_srank())
    }
}

#[pyclass(name = "GroundSet", module = "ordagg", frozen)]
struct PyGroundSet(GroundSet);

fn subset(g: &GroundSet, obj: &Bound<'_, PyAny>) -> PyResult<Subset> {
    if let Ok(s) = obj.extract::<String>() {
        return g.parse_subset(&s).py();
    }
    let mut a = Subset::EMPTY;
    for item in obj.try_iter()? {
        let name: String = item?.extract()?;
        let i = g
            .index_of(&name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown element {name:?}")))?;
        a = a.with(i);
    }
    Ok(a)
}

#[pymethods]
impl PyGroundSet {
    #[new]
    fn new(names: Vec<String>) -> PyResult<Self> {
        GroundSet::new(names).py().map(PyGroundSet)
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.0.names().to_vec()
    }

    /// Every subset in bitmask order, formatted as `{a,b}`.
    fn subsets(&self) -> Vec<String> {
        self.0.subsets().map(|a| self.0.format_subset(a)).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("GroundSet({:?})", self.0.names())
    }
}

#[pyclass(name = "Measure", module = "ordagg", frozen)]
struct PyMeasure(Measure);

#[pymethods]
impl PyMeasure {
    /// `table` maps subsets to ranks; it must contain `{}` and Ω.
    #[new]
    fn new(ground: &PyGroundSet, scale: &PyChain, table: Vec<(Bound<'_, PyAny>, usize)>) -> PyResult<Self> {
        let entries = table
            .iter()
            .map(|(k, v)| Ok((subset(&ground.0, k)?, *v)))
            .collect::<PyResult<Vec<_>>>()?;
        Measure::new(&ground.0, &scale.0, entries).py().map(PyMeasure)
    }

    #[staticmethod]
    fn unanimity(ground: &PyGroundSet, scale: &PyChain, k: &Bound<'_, PyAny>) -> PyResult<Self> {
        measure::unanimity(&ground.0, &scale.0, subset(&ground.0, k)?).py().map(PyMeasure)
    }

    #[staticmethod]
    fn co_unanimity(ground: &PyGroundSet, scale: &PyChain, k: &Bound<'_, PyAny>) -> PyResult<Self> {
        measure::co_unanimity(&ground.0, &scale.0, subset(&ground.0, k)?).py().map(PyMeasure)
    }

    /// Lower (minitive) or upper (maxitive) measure of a ⊆-chain with values.
    #[staticmethod]
    fn chain_measure(
        ground: &PyGroundSet,
        scale: &PyChain,
        chain: Vec<(Bound<'_, PyAny>, usize)>,
        kind: &str,
    ) -> PyResult<Self> {
        let kind: ChainKind = kind.parse().py()?;
        let entries = chain
            .iter()
            .map(|(k, v)| Ok((subset(&ground.0, k)?, *v)))
            .collect::<PyResult<Vec<_>>>()?;
        measure::chain_measure(&ground.0, &scale.0, &entries, kind).py().map(PyMeasure)
    }

    fn value(&self, a: &Bound<'_, PyAny>) -> PyResult<usize> {
        self.0.value(subset(self.0.ground(), a)?).py()
    }

    #[getter]
    fn ground(&self) -> PyGroundSet {
        PyGroundSet(self.0.ground().clone())
    }

    #[getter]
    fn scale(&self) -> PyChain {
        PyChain(self.0.scale().clone())
    }

    fn is_total(&self) -> bool {
        self.0.is_total()
    }

    fn is_minitive(&self) -> PyResult<bool> {
        self.0.is_minitive().py()
    }

    fn is_maxitive(&self) -> PyResult<bool> {
        self.0.is_maxitive().py()
    }

    fn inner_extension(&self) -> Self {
        PyMeasure(self.0.inner_extension())
    }

    fn outer_extension(&self) -> Self {
        PyMeasure(self.0.outer_extension())
    }

    fn sign_measure(&self) -> Self {
        PyMeasure(self.0.sign_measure())
    }

    /// The recovered chain for `"lower"` (minitive) or `"upper"` (maxitive).
    fn defining_chain(&self, kind: &str) -> PyResult<Vec<String>> {
        let chain = match kind.parse::<ChainKind>().py()? {
            ChainKind::Lower => self.0.minitive_chain(),
            ChainKind::Upper => self.0.maxitive_chain(),
        }
        .py()?;
        Ok(chain.into_iter().map(|a| self.0.ground().format_subset(a)).collect())
    }

    /// `(subset, rank)` pairs of the defined family.
    fn items(&self) -> Vec<(String, usize)> {
        self.0
            .family()
            .map(|a| (self.0.ground().format_subset(a), self.0.get(a).unwrap()))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

#[pyclass(name = "LatticeFn", module = "ordagg", frozen)]
struct PyLatticeFn(LatticeFn);

#[pymethods]
impl PyLatticeFn {
    #[new]
    fn new(ground: &PyGroundSet, scale: &PyChain, values: Vec<usize>) -> PyResult<Self> {
        LatticeFn::new(&ground.0, &scale.0, values).py().map(PyLatticeFn)
    }

    #[getter]
    fn values(&self) -> Vec<usize> {
        self.0.values().to_vec()
    }

    #[getter]
    fn scale(&self) -> PyChain {
        PyChain(self.0.scale().clone())
    }

    fn join(&self, other: &Self) -> PyResult<Self> {
        self.0.join(&other.0).py().map(PyLatticeFn)
    }

    fn meet(&self, other: &Self) -> PyResult<Self> {
        self.0.meet(&other.0).py().map(PyLatticeFn)
    }

    fn __repr__(&self) -> String {
        format!("LatticeFn({:?})", self.0.values())
    }
}

#[pyclass(name = "RFn", module = "ordagg", frozen)]
struct PyRFn(RFn);

#[pymethods]
impl PyRFn {
    #[new]
    fn new(ground: &PyGroundSet, scale: &PyReflChain, values: Vec<i64>) -> PyResult<Self> {
        RFn::new(&ground.0, &scale.0, values).py().map(PyRFn)
    }

    #[getter]
    fn values(&self) -> Vec<i64> {
        self.0.values().to_vec()
    }

    fn neg(&self) -> Self {
        PyRFn(self.0.neg())
    }

    fn pos_part(&self) -> PyLatticeFn {
        PyLatticeFn(aggregation::pos_part(&self.0))
    }

    fn neg_part(&self) -> PyLatticeFn {
        PyLatticeFn(aggregation::neg_part(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("RFn({:?})", self.0.values())
    }
}

#[pyclass(name = "CommFn", module = "ordagg", frozen)]
struct PyCommFn(CommFn);

#[pymethods]
impl PyCommFn {
    /// An increasing map `src → dst` given by its ranks.
    #[new]
    fn new(src: &PyChain, dst: &PyChain, values: Vec<usize>) -> PyResult<Self> {
        CommFn::new(&src.0, &dst.0, values).py().map(PyCommFn)
    }

    /// The rank-preserving map between chains of equal size.
    #[staticmethod]
    fn identity(src: &PyChain, dst: &PyChain) -> PyResult<Self> {
        CommFn::identity_between(&src.0, &dst.0).py().map(PyCommFn)
    }

    #[getter]
    fn values(&self) -> Vec<usize> {
        self.0.values().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("CommFn({:?})", self.0.values())
    }
}

#[pyfunction]
fn distribution(mu: &PyMeasure, f: &PyLatticeFn) -> PyResult<Vec<usize>> {
    Ok(aggregation::distribution(&mu.0, &f.0).py()?.values().to_vec())
}

/// `Q(p)` for every `p`, as `(lo, hi)` pairs.
#[pyfunction]
#[pyo3(signature = (mu, f, variant="sharp"))]
fn quantile(mu: &PyMeasure, f: &PyLatticeFn, variant: &str) -> PyResult<Vec<(usize, usize)>> {
    let q = aggregation::quantile(&mu.0, &f.0, self::variant(variant)?).py()?;
    Ok(q.table().iter().flatten().map(|s| (s.lo(), s.hi())).collect())
}

#[pyfunction]
fn median(mu: &PyMeasure, f: &PyLatticeFn, p0: usize) -> PyResult<PyInterval> {
    aggregation::median(&mu.0, &f.0, p0).py().map(PyInterval)
}

#[pyfunction]
#[pyo3(signature = (mu, f, ell, variant="sharp"))]
fn fan_sugeno(mu: &PyMeasure, f: &PyLatticeFn, ell: &PyCommFn, variant: &str) -> PyResult<PyInterval> {
    aggregation::fan_sugeno(&mu.0, &f.0, &ell.0, self::variant(variant)?).py().map(PyInterval)
}

#[pyfunction]
#[pyo3(signature = (mu, f, ell, variant="sharp"))]
fn fan_sugeno_dual(mu: &PyMeasure, f: &PyLatticeFn, ell: &PyCommFn, variant: &str) -> PyResult<PyInterval> {
    aggregation::fan_sugeno_dual(&mu.0, &f.0, &ell.0, self::variant(variant)?).py().map(PyInterval)
}

#[pyfunction]
fn fan_sugeno_sup(mu: &PyMeasure, f: &PyLatticeFn, ell: &PyCommFn) -> PyResult<usize> {
    Ok(aggregation::fan_sugeno_sup(&mu.0, &f.0, &ell.0).py()?.rank())
}

#[pyfunction]
fn sugeno_integral(mu: &PyMeasure, f: &PyLatticeFn) -> PyResult<usize> {
    Ok(aggregation::sugeno_integral(&mu.0, &f.0).py()?.rank())
}

#[pyfunction]
fn is_comonotonic(fs: Vec<PyRef<'_, PyLatticeFn>>) -> PyResult<bool> {
    let v: Vec<LatticeFn> = fs.iter().map(|f| f.0.clone()).collect();
    aggregation::is_comonotonic(&v).py()
}

/// `ell_neg` defaults to `ell`.
#[pyfunction]
#[pyo3(signature = (mu, f, ell, ell_neg=None, variant="sharp"))]
fn symmetric_fan_sugeno(
    mu: &PyMeasure,
    f: &PyRFn,
    ell: &PyCommFn,
    ell_neg: Option<&PyCommFn>,
    variant: &str,
) -> PyResult<PyRInterval> {
    let k = ell_neg.unwrap_or(ell);
    aggregation::symmetric_fan_sugeno(&mu.0, &f.0, &ell.0, &k.0, self::variant(variant)?)
        .py()
        .map(PyRInterval)
}

#[pyfunction]
#[pyo3(signature = (mu, f, ell_minus, ell_plus, variant="sharp"))]
fn asymmetric_fan_sugeno(
    mu: &PyMeasure,
    f: &PyRFn,
    ell_minus: &PyCommFn,
    ell_plus: &PyCommFn,
    variant: &str,
) -> PyResult<PyRInterval> {
    aggregation::asymmetric_fan_sugeno(&mu.0, &f.0, &ell_minus.0, &ell_plus.0, self::variant(variant)?)
        .py()
        .map(PyRInterval)
}

#[pyfunction]
fn ordinal_distance(mu: &PyMeasure, ell: &PyCommFn, f: &PyRFn, g: &PyRFn) -> PyResult<usize> {
    Ok(metrics::ordinal_distance(&mu.0, &ell.0, &f.0, &g.0).py()?.rank())
}

#[pyfunction]
fn ordinal_norm(mu: &PyMeasure, ell: &PyCommFn, f: &PyRFn) -> PyResult<usize> {
    Ok(metrics::ordinal_norm(&mu.0, &ell.0, &f.0).py()?.rank())
}

#[pyfunction]
fn kyfan_norm(mu: &PyMeasure, f: &PyRFn) -> PyResult<usize> {
    Ok(metrics::kyfan_norm(&mu.0, &f.0).py()?.rank())
}

#[pyfunction]
fn esssup_norm(mu: &PyMeasure, f: &PyRFn) -> PyResult<usize> {
    Ok(metrics::esssup_norm(&mu.0, &f.0).py()?.rank())
}

#[pyfunction]
fn is_nullfunction(mu: &PyMeasure, f: &PyRFn) -> PyResult<bool> {
    metrics::is_nullfunction(&mu.0, &f.0).py()
}

#[pyclass(name = "SpecFile", module = "ordagg", frozen)]
struct PySpecFile(SpecFile);

#[pymethods]
impl PySpecFile {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        SpecFile::parse(text).py().map(PySpecFile)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| err(format!("{path}: {e}")))?;
        Self::parse(&text)
    }

    fn measure_names(&self) -> Vec<String> {
        self.0.measures().keys().cloned().collect()
    }

    fn function_names(&self) -> Vec<String> {
        self.0.functions().keys().cloned().collect()
    }

    fn comm_names(&self) -> Vec<String> {
        self.0.comms().keys().cloned().collect()
    }

    fn measure(&self, name: &str) -> PyResult<PyMeasure> {
        self.0
            .measure(name)
            .cloned()
            .map(PyMeasure)
            .ok_or_else(|| err(format!("no measure {name:?}")))
    }

    /// A `LatticeFn`, or an `RFn` for functions on a reflection scale.
    fn function<'py>(&self, py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
        match self.0.function(name) {
            Some(Function::Plain(f)) => Ok(Bound::new(py, PyLatticeFn(f.clone()))?.into_any()),
            Some(Function::Refl(f)) => Ok(Bound::new(py, PyRFn(f.clone()))?.into_any()),
            None => Err(err(format!("no function {name:?}"))),
        }
    }

    fn comm(&self, name: &str) -> PyResult<PyCommFn> {
        self.0
            .comm(name)
            .cloned()
            .map(PyCommFn)
            .ok_or_else(|| err(format!("no comm {name:?}")))
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }
}

#[pymodule]
fn ordagg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyChain>()?;
    m.add_class::<PyReflChain>()?;
    m.add_class::<PyInterval>()?;
    m.add_class::<PyRInterval>()?;
    m.add_class::<PyGroundSet>()?;
    m.add_class::<PyMeasure>()?;
    m.add_class::<PyLatticeFn>()?;
    m.add_class::<PyRFn>()?;
    m.add_class::<PyCommFn>()?;
    m.add_class::<PySpecFile>()?;
    m.add_function(wrap_pyfunction!(sqcup_all, m)?)?;
    m.add_function(wrap_pyfunction!(sqcap_all, m)?)?;
    m.add_function(wrap_pyfunction!(distribution, m)?)?;
    m.add_function(wrap_pyfunction!(quantile, m)?)?;
    m.add_function(wrap_pyfunction!(median, m)?)?;
    m.add_function(wrap_pyfunction!(fan_sugeno, m)?)?;
    m.add_function(wrap_pyfunction!(fan_sugeno_dual, m)?)?;
    m.add_function(wrap_pyfunction!(fan_sugeno_sup, m)?)?;
    m.add_function(wrap_pyfunction!(sugeno_integral, m)?)?;
    m.add_function(wrap_pyfunction!(is_comonotonic, m)?)?;
    m.add_function(wrap_pyfunction!(symmetric_fan_sugeno, m)?)?;
    m.add_function(wrap_pyfunction!(asymmetric_fan_sugeno, m)?)?;
    m.add_function(wrap_pyfunction!(ordinal_distance, m)?)?;
    m.add_function(wrap_pyfunction!(ordinal_norm, m)?)?;
    m.add_function(wrap_pyfunction!(kyfan_norm, m)?)?;
    m.add_function(wrap_pyfunction!(esssup_norm, m)?)?;
    m.add_function(wrap_pyfunction!(is_nullfunction, m)?)?;
    Ok(())
}

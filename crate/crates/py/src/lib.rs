//! Python bindings for the main types and operations: binary forms and their
//! discriminants, resolvent and sextic index forms, class groups, local
//! solubility certificates, cubic field counts and family enumeration.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use indexform::classgrp::{self, FormClassGroup};
use indexform::cubicfields::count_cubic_fields_by_enumeration;
use indexform::families::{enumerate_family, FamilyParams, Sign};
use indexform::forms::BinaryForm;
use indexform::localsolve::{
    cubic_locally_represents, default_depth, mod8_unit_check, quartic_locally_represents,
    splitting_type, verify_certificate_line, LocalOutcome, TwoAdicQuarticCatalogue,
};
use indexform::rings::{binary_ring, pair_from_binary_quartic};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An integral binary form of any degree.
#[pyclass(name = "BinaryForm")]
#[derive(Clone)]
struct PyBinaryForm {
    inner: BinaryForm,
}

#[pymethods]
impl PyBinaryForm {
    /// Build from the coefficient list (a_0, ..., a_n).
    #[new]
    fn new(coeffs: Vec<BigInt>) -> PyResult<Self> {
        if coeffs.len() < 2 {
            return Err(PyValueError::new_err("need at least two coefficients"));
        }
        Ok(PyBinaryForm {
            inner: BinaryForm::new(coeffs),
        })
    }

    /// Parse the canonical text serialization `deg:a_0,...,a_n`.
    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        Ok(PyBinaryForm {
            inner: s.parse().map_err(err)?,
        })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn coefficients(&self) -> Vec<BigInt> {
        self.inner.coeffs().to_vec()
    }

    fn evaluate(&self, x: BigInt, y: BigInt) -> BigInt {
        self.inner.evaluate(&x, &y)
    }

    fn discriminant(&self) -> PyResult<BigInt> {
        self.inner.discriminant().map_err(err)
    }

    /// Apply a unimodular matrix [[a, b], [c, d]] on the right.
    fn gl2_act(&self, g: [[i64; 2]; 2]) -> PyResult<Self> {
        Ok(PyBinaryForm {
            inner: self.inner.gl2_act(&g).map_err(err)?,
        })
    }

    /// Splitting type mod p, e.g. "(1^3 1)".
    fn splitting_type(&self, p: u64) -> PyResult<String> {
        Ok(splitting_type(&self.inner, p).map_err(err)?.to_string())
    }

    /// Resolvent cubic of the quartic seed pair (degree 4 only).
    fn quartic_resolvent(&self) -> PyResult<Self> {
        let pair = pair_from_binary_quartic(&self.inner).map_err(err)?;
        Ok(PyBinaryForm {
            inner: pair.resolvent_form().map_err(err)?,
        })
    }

    /// Coefficients of the ternary sextic index form of the quartic seed
    /// pair, keyed by exponent triple.
    fn quartic_index_form<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let pair = pair_from_binary_quartic(&self.inner).map_err(err)?;
        let sextic = pair.quartic_index_form().map_err(err)?;
        let dict = PyDict::new_bound(py);
        for (&(i, j, k), c) in sextic.terms() {
            dict.set_item((i, j, k), c.clone())?;
        }
        Ok(dict)
    }

    /// Discriminant of the invariant order R_F via the trace pairing.
    fn invariant_order_discriminant(&self) -> PyResult<BigInt> {
        Ok(binary_ring(&self.inner).map_err(err)?.discriminant())
    }

    /// Search for a p-adic certificate that the index form represents eps.
    /// Returns a dict with the outcome and, when certified, the record line.
    #[pyo3(signature = (p, eps, depth=None))]
    fn locally_represents<'py>(
        &self,
        py: Python<'py>,
        p: u64,
        eps: i8,
        depth: Option<u32>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let depth = depth.unwrap_or_else(|| default_depth(p));
        let outcome = match self.inner.degree() {
            3 => cubic_locally_represents(&self.inner, p, eps, depth),
            4 => quartic_locally_represents(&self.inner, p, eps, depth),
            d => return Err(PyValueError::new_err(format!("degree {d} is not 3 or 4"))),
        }
        .map_err(err)?;
        let dict = PyDict::new_bound(py);
        match outcome {
            LocalOutcome::Certified(c) => {
                dict.set_item("outcome", "certified")?;
                dict.set_item("record", c.serialize())?;
                dict.set_item("k", c.k)?;
                dict.set_item("gradient_valuation", c.gradient_valuation)?;
            }
            LocalOutcome::Inconclusive { depth } => {
                dict.set_item("outcome", "inconclusive")?;
                dict.set_item("depth", depth)?;
            }
            LocalOutcome::ObstructedAtDepth { depth } => {
                dict.set_item("outcome", "obstructed")?;
                dict.set_item("depth", depth)?;
            }
        }
        Ok(dict)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("BinaryForm({})", self.inner)
    }
}

/// The class group of a negative discriminant.
#[pyclass(name = "ClassGroup")]
struct PyClassGroup {
    inner: FormClassGroup,
}

#[pymethods]
impl PyClassGroup {
    #[new]
    fn new(delta: i64) -> PyResult<Self> {
        Ok(PyClassGroup {
            inner: FormClassGroup::new(delta).map_err(err)?,
        })
    }

    #[getter]
    fn discriminant(&self) -> i64 {
        self.inner.discriminant
    }

    #[getter]
    fn fundamental(&self) -> bool {
        self.inner.fundamental
    }

    fn order(&self) -> u64 {
        self.inner.order()
    }

    fn forms(&self) -> Vec<(i64, i64, i64)> {
        self.inner.elements().to_vec()
    }

    fn three_torsion_size(&self) -> u64 {
        self.inner.three_torsion_size()
    }

    fn elementary_divisors(&self) -> Vec<u64> {
        self.inner.structure().0
    }

    fn compose(&self, f: (i64, i64, i64), g: (i64, i64, i64)) -> (i64, i64, i64) {
        classgrp::compose(f, g)
    }

    fn is_cube(&self, f: (i64, i64, i64)) -> bool {
        self.inner.is_cube(f)
    }

    /// The reduced class of a prime ideal above p with its splitting tag.
    fn prime_class(&self, p: u64) -> PyResult<((i64, i64, i64), String)> {
        let pc = classgrp::prime_class(&self.inner, p).map_err(err)?;
        let tag = match pc.split {
            classgrp::SplitTag::Split => "split",
            classgrp::SplitTag::Ramified => "ramified",
        };
        Ok((pc.form, tag.to_string()))
    }

    /// (quotient order, 3-torsion of the quotient) for the S-class group.
    fn s_class_three_torsion(&self, s: Vec<u64>) -> PyResult<(u64, u64)> {
        let data = classgrp::s_class_three_torsion(&self.inner, &s).map_err(err)?;
        Ok((data.quotient_order, data.three_torsion))
    }

    fn serialize(&self) -> String {
        self.inner.serialize()
    }

    fn __repr__(&self) -> String {
        format!(
            "ClassGroup(discriminant={}, h={})",
            self.inner.discriminant,
            self.inner.order()
        )
    }
}

#[pyfunction]
fn kronecker(a: i64, m: i64) -> i32 {
    indexform::arith::kronecker(a, m)
}

#[pyfunction]
fn is_fundamental_discriminant(d: i64) -> bool {
    indexform::arith::is_fundamental_discriminant(d)
}

/// Ideal-pair count of cubic fields: returns (orbits, pairs, fixed).
#[pyfunction]
fn count_cubic_fields(d: i64, f: u64, primes: Vec<u64>) -> PyResult<(u64, u64, u64)> {
    let c = classgrp::count_cubic_fields(d, f, &primes).map_err(err)?;
    Ok((c.orbits, c.pairs, c.fixed))
}

/// Enumeration count of cubic fields of one discriminant, with canonical
/// form representatives.
#[pyfunction]
fn count_cubic_fields_enumerated(d: i64) -> PyResult<(u64, Vec<String>)> {
    let e = count_cubic_fields_by_enumeration(d).map_err(err)?;
    Ok((
        e.count(),
        e.forms.iter().map(|f| f.to_string()).collect(),
    ))
}

/// Verify a serialized certificate against a serialized form on the
/// independent evaluation path.
#[pyfunction]
fn verify_certificate(record: &str, form: &str) -> PyResult<bool> {
    verify_certificate_line(record, form).map_err(err)
}

/// The three catalogue quartics with their discriminant 2-valuations.
#[pyfunction]
fn catalogue_valuations() -> PyResult<Vec<(String, u32)>> {
    let cat = TwoAdicQuarticCatalogue::new();
    let vals = cat.valuations().map_err(err)?;
    Ok(cat
        .quartics
        .iter()
        .zip(vals.iter())
        .map(|(g, &v)| (g.to_string(), v))
        .collect())
}

/// The 12 rows of the mod-8 unit check as (quartic index, unit, attained).
#[pyfunction]
fn mod8_check() -> PyResult<Vec<(usize, u64, bool)>> {
    Ok(mod8_unit_check()
        .map_err(err)?
        .into_iter()
        .map(|r| (r.quartic_index, r.unit, r.attained))
        .collect())
}

/// Members of Σ_n^± up to X as dicts.
#[pyfunction]
fn family_members<'py>(
    py: Python<'py>,
    primes: Vec<u64>,
    sign: &str,
    x: i64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let sign: Sign = sign.parse().map_err(err)?;
    let params = FamilyParams::new(primes, sign, x).map_err(err)?;
    let members = enumerate_family(&params).map_err(err)?;
    let mut out = Vec::with_capacity(members.len());
    for m in members {
        let dict = PyDict::new_bound(py);
        dict.set_item("D", m.big_d)?;
        dict.set_item("d", m.d)?;
        dict.set_item("field_discriminant", m.field_discriminant)?;
        dict.set_item("h", m.h)?;
        dict.set_item("three_torsion", m.three_torsion)?;
        dict.set_item("tag", m.tag.to_string())?;
        dict.set_item("prime_class_is_cube", m.prime_class_is_cube)?;
        out.push(dict);
    }
    Ok(out)
}

#[pymodule]
fn indexform_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBinaryForm>()?;
    m.add_class::<PyClassGroup>()?;
    m.add_function(wrap_pyfunction!(kronecker, m)?)?;
    m.add_function(wrap_pyfunction!(is_fundamental_discriminant, m)?)?;
    m.add_function(wrap_pyfunction!(count_cubic_fields, m)?)?;
    m.add_function(wrap_pyfunction!(count_cubic_fields_enumerated, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(catalogue_valuations, m)?)?;
    m.add_function(wrap_pyfunction!(mod8_check, m)?)?;
    m.add_function(wrap_pyfunction!(family_members, m)?)?;
    Ok(())
}

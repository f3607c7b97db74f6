//! Exact spectra of flag-preserving operators from their graded-basis block
//! matrices. The (degree, lex) monomial order makes such matrices block
//! triangular, so the spectrum is the union of the diagonal-block spectra;
//! no dense eigensolver ever runs on the full matrix.

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::model::{molecular_e0, three_center_e0, GaugeParams, SpecialModel, SpecialOperator};
use crate::poly::graded_basis;
use crate::rational::{rat_to_f64, Rat};
use num_traits::Zero;

/// An energy that is either exact or float-verified.
#[derive(Clone, Debug, PartialEq)]
pub enum EnergyValue {
    Exact(Rat),
    /// Value with the residual of its eigen verification.
    Approx { value: f64, residual: f64 },
}

impl EnergyValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            EnergyValue::Exact(r) => rat_to_f64(r),
            EnergyValue::Approx { value, .. } => *value,
        }
    }
}

/// One spectral level keyed by its quantum numbers.
#[derive(Clone, Debug)]
pub struct SpectrumLevel {
    pub quantum_numbers: Vec<u32>,
    pub energy: EnergyValue,
    /// Number of quantum-number tuples sharing this energy in the table.
    pub multiplicity: usize,
}

/// Eigenvalues of the degree-1 diagonal block.
#[derive(Clone, Debug)]
pub struct FundamentalFrequencies {
    /// Present when the block allowed exact extraction.
    pub exact: Option<Vec<Rat>>,
    pub values: Vec<f64>,
}

const EIG_TOL: f64 = 1e-10;
const MATCH_TOL: f64 = 1e-9;

fn is_triangular(b: &RatMatrix) -> Option<Vec<Rat>> {
    let n = b.len();
    let lower = (0..n).all(|i| (i + 1..n).all(|j| b[i][j].is_zero()));
    let upper = (0..n).all(|i| (0..i).all(|j| b[i][j].is_zero()));
    if lower || upper {
        Some((0..n).map(|i| b[i][i].clone()).collect())
    } else {
        None
    }
}

fn is_scalar(b: &RatMatrix) -> Option<Rat> {
    let n = b.len();
    if n == 0 {
        return None;
    }
    let lambda = b[0][0].clone();
    for (i, row) in b.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let expect_diag = i == j;
            if (expect_diag && *x != lambda) || (!expect_diag && !x.is_zero()) {
                return None;
            }
        }
    }
    Some(lambda)
}

/// Exact eigenvalues of a diagonal block if its shape permits (triangular or
/// a multiple of the identity), otherwise `None`.
fn exact_block_eigenvalues(b: &RatMatrix) -> Option<Vec<Rat>> {
    if let Some(lambda) = is_scalar(b) {
        return Some(vec![lambda; b.len()]);
    }
    is_triangular(b)
}

/// Eigenvalues of the degree-1 block of `matrix_on_basis(h, 1)`.
pub fn fundamental_frequencies<const V: usize>(h: &DiffOp<V>) -> Result<FundamentalFrequencies> {
    let m = h.matrix_on_basis(1)?;
    if !m.is_block_triangular() {
        return Err(Error::IdentityFailure(
            "operator raises degree inside the basis; no triangular spectrum".into(),
        ));
    }
    let block = m.diagonal_block(1);
    if let Some(exact) = exact_block_eigenvalues(&block) {
        let values = exact.iter().map(rat_to_f64).collect();
        return Ok(FundamentalFrequencies {
            exact: Some(exact),
            values,
        });
    }
    let bf = linalg::to_f64_matrix(&block);
    let values = linalg::real_eigenvalues(&bf, EIG_TOL).ok_or_else(|| {
        Error::IdentityFailure(
            "degree-1 block failed the real-eigenvalue residual check".into(),
        )
    })?;
    Ok(FundamentalFrequencies {
        exact: None,
        values,
    })
}

fn cluster_multiplicities(levels: &mut [SpectrumLevel]) {
    for i in 0..levels.len() {
        let ei = levels[i].energy.as_f64();
        let mult = levels
            .iter()
            .filter(|l| {
                match (&l.energy, &levels[i].energy) {
                    (EnergyValue::Exact(a), EnergyValue::Exact(b)) => a == b,
                    _ => (l.energy.as_f64() - ei).abs() <= MATCH_TOL * ei.abs().max(1.0),
                }
            })
            .count();
        levels[i].multiplicity = mult;
    }
}

/// All levels of the flag-preserving operator on the degree-`max_degree`
/// basis. Levels are predicted as non-negative integer combinations of the
/// fundamental frequencies and verified against the diagonal blocks —
/// exactly where the blocks are triangular or scalar, by residual-checked
/// float eigenvalues otherwise. A failed verification is an error, never a
/// silent result. For `max_degree <= 2` the block-triangular extraction is
/// additionally cross-checked against the exact characteristic polynomial of
/// the full matrix.
pub fn spectrum<const V: usize>(h: &DiffOp<V>, max_degree: u32) -> Result<Vec<SpectrumLevel>> {
    let freqs = fundamental_frequencies(h)?;
    let m = h.matrix_on_basis(max_degree)?;
    if !m.is_block_triangular() {
        return Err(Error::IdentityFailure(
            "operator matrix is not block triangular".into(),
        ));
    }
    if max_degree <= 2 && m.char_poly() != m.block_char_poly() {
        return Err(Error::IdentityFailure(
            "block spectrum disagrees with the direct characteristic polynomial".into(),
        ));
    }
    // predicted levels, grouped per degree block
    let tuples = graded_basis::<V>(max_degree);
    let mut levels: Vec<SpectrumLevel> = Vec::with_capacity(tuples.len());
    for k in 0..=max_degree as usize {
        let block = m.diagonal_block(k);
        let block_tuples: Vec<_> = tuples
            .iter()
            .filter(|t| t.degree() == k as u32)
            .collect();
        debug_assert_eq!(block.len(), block_tuples.len());
        let exact_eigs = exact_block_eigenvalues(&block);
        match (&freqs.exact, exact_eigs) {
            (Some(lams), Some(mut eigs)) => {
                // exact route: predicted multiset must equal the block multiset
                let mut predicted: Vec<Rat> = block_tuples
                    .iter()
                    .map(|t| {
                        t.0.iter()
                            .zip(lams.iter())
                            .map(|(&n, l)| Rat::from_integer(n.into()) * l)
                            .fold(Rat::zero(), |acc, x| acc + x)
                    })
                    .collect();
                let mut sorted = predicted.clone();
                sorted.sort();
                eigs.sort();
                if sorted != eigs {
                    return Err(Error::IdentityFailure(format!(
                        "degree-{k} block spectrum differs from the linear prediction"
                    )));
                }
                for (t, e) in block_tuples.iter().zip(predicted.drain(..)) {
                    levels.push(SpectrumLevel {
                        quantum_numbers: t.0.to_vec(),
                        energy: EnergyValue::Exact(e),
                        multiplicity: 0,
                    });
                }
            }
            _ if is_scalar(&block).is_some() => {
                // a scalar block (the degree-0 block always is) stays exact
                // even when the degree-1 frequencies needed a float solve
                let lambda = is_scalar(&block).unwrap();
                let lf = rat_to_f64(&lambda);
                for t in &block_tuples {
                    let predicted: f64 = t
                        .0
                        .iter()
                        .zip(freqs.values.iter())
                        .map(|(&n, l)| n as f64 * l)
                        .sum();
                    if (predicted - lf).abs() > MATCH_TOL * predicted.abs().max(1.0) {
                        return Err(Error::IdentityFailure(format!(
                            "degree-{k} scalar block disagrees with the linear prediction"
                        )));
                    }
                    levels.push(SpectrumLevel {
                        quantum_numbers: t.0.to_vec(),
                        energy: EnergyValue::Exact(lambda.clone()),
                        multiplicity: 0,
                    });
                }
            }
            _ => {
                // float route
                let bf = linalg::to_f64_matrix(&block);
                let mut eigs = linalg::real_eigenvalues(&bf, EIG_TOL).ok_or_else(|| {
                    Error::IdentityFailure(format!(
                        "degree-{k} block failed the eigenvalue residual check"
                    ))
                })?;
                let mut predicted: Vec<(usize, f64)> = block_tuples
                    .iter()
                    .enumerate()
                    .map(|(idx, t)| {
                        (
                            idx,
                            t.0.iter()
                                .zip(freqs.values.iter())
                                .map(|(&n, l)| n as f64 * l)
                                .sum::<f64>(),
                        )
                    })
                    .collect();
                predicted.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
                eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let mut residuals = vec![0.0; block_tuples.len()];
                for ((idx, p), e) in predicted.iter().zip(eigs.iter()) {
                    let r = (p - e).abs();
                    if r > MATCH_TOL * p.abs().max(1.0) {
                        return Err(Error::IdentityFailure(format!(
                            "degree-{k} block eigenvalue {e} is not a frequency combination (predicted {p})"
                        )));
                    }
                    residuals[*idx] = r;
                }
                for (pos, t) in block_tuples.iter().enumerate() {
                    let value = t
                        .0
                        .iter()
                        .zip(freqs.values.iter())
                        .map(|(&n, l)| n as f64 * l)
                        .sum::<f64>();
                    levels.push(SpectrumLevel {
                        quantum_numbers: t.0.to_vec(),
                        energy: EnergyValue::Approx {
                            value,
                            residual: residuals[pos],
                        },
                        multiplicity: 0,
                    });
                }
            }
        }
    }
    cluster_multiplicities(&mut levels);
    Ok(levels)
}

/// Aggregate a level table into (energy, multiplicity) pairs of distinct
/// exact energies. Only valid for tables with exact energies.
pub fn aggregate_exact(levels: &[SpectrumLevel]) -> Option<Vec<(Rat, usize)>> {
    let mut out: Vec<(Rat, usize)> = Vec::new();
    for l in levels {
        let EnergyValue::Exact(e) = &l.energy else {
            return None;
        };
        match out.iter_mut().find(|(v, _)| v == e) {
            Some((_, c)) => *c += 1,
            None => out.push((e.clone(), 1)),
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Some(out)
}

/// Closed-form level of a special-case model at the given quantum numbers:
/// the equal-mass excitation `8 a omega (N1+..+N6)`, or the potential-curve
/// shift plus excitation for the molecular and three-center limits (the
/// excitation verified through [`spectrum`] of the reduced operator).
pub fn closed_form_special_spectrum(
    model: &SpecialModel,
    gp: &GaugeParams,
    d: &Rat,
    quantum_numbers: &[u32],
) -> Result<EnergyValue> {
    match model {
        SpecialModel::EqualMasses { .. } => {
            if quantum_numbers.len() != 6 {
                return Err(Error::Config("equal-mass levels take six quantum numbers".into()));
            }
            let a = gp.gauge(crate::poly::VarId::R12).clone();
            for v in crate::poly::VarId::ALL {
                if *gp.gauge(v) != a {
                    return Err(Error::Config(
                        "the closed equal-mass formula needs all gauge parameters equal".into(),
                    ));
                }
            }
            let total: i64 = quantum_numbers.iter().map(|&n| n as i64).sum();
            Ok(EnergyValue::Exact(
                crate::rational::rat_i(8) * a * &gp.omega * crate::rational::rat_i(total),
            ))
        }
        SpecialModel::MolecularTwoCenter { m, rho12 } => {
            if quantum_numbers.len() != 5 {
                return Err(Error::Config("molecular levels take five quantum numbers".into()));
            }
            let base = molecular_e0(m, gp, d, rho12);
            add_excitation(model, gp, d, quantum_numbers, base)
        }
        SpecialModel::ThreeCenter {
            m,
            rho12,
            rho13,
            rho23,
        } => {
            if quantum_numbers.len() != 3 {
                return Err(Error::Config(
                    "three-center levels take three quantum numbers".into(),
                ));
            }
            let base = three_center_e0(m, gp, d, rho12, rho13, rho23);
            add_excitation(model, gp, d, quantum_numbers, base)
        }
        _ => Err(Error::Config(
            "closed-form levels exist for the equal-mass, molecular and three-center variants"
                .into(),
        )),
    }
}

fn add_excitation(
    model: &SpecialModel,
    gp: &GaugeParams,
    d: &Rat,
    quantum_numbers: &[u32],
    base: Rat,
) -> Result<EnergyValue> {
    let total: u32 = quantum_numbers.iter().sum();
    if total == 0 {
        return Ok(EnergyValue::Exact(base));
    }
    let op = crate::model::build_special(model, gp, d)?;
    let levels = match &op {
        SpecialOperator::Six(h) => spectrum(h, total)?,
        SpecialOperator::Five(h) => spectrum(h, total)?,
        SpecialOperator::Three(h) => spectrum(h, total)?,
    };
    let level = levels
        .into_iter()
        .find(|l| l.quantum_numbers == quantum_numbers)
        .ok_or_else(|| Error::Config("quantum numbers outside the computed table".into()))?;
    Ok(match level.energy {
        EnergyValue::Exact(e) => EnergyValue::Exact(base + e),
        EnergyValue::Approx { value, residual } => EnergyValue::Approx {
            value: rat_to_f64(&base) + value,
            residual,
        },
    })
}

//! Complete complementary codes and optimal Z-complementary code sets.
//!
//! Both builders start from a second-order function `f` whose graph becomes
//! a path of weight-`q/2` edges after deleting the vertices `x_{j_0}, …,
//! x_{j_{k-1}}`, and from an end vertex `γ` of that path.
//!
//! Layout conventions:
//! - inside a code, the member built from `(d_vec, d)` sits at position
//!   `ν = d·2^k + Σ d_i 2^i`;
//! - a CCC lists the `C_t` codes (`μ = t`) before the `C̄_t` codes
//!   (`μ = 2^k + t`);
//! - a ZCCS lists the `U` codes (`μ = λ·2^k + t`) before the `V` codes
//!   (`μ = p·2^k + λ·2^k + t`).

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolfn::{
    check_path_after_deletion, check_pbf_params, psi_pbf, to_bits, Gbf, PathCertificate, PbfFamily,
    PbfSpec, RootSequence,
};
use crate::{Error, Result};

/// Which construction family a code came from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum CodeLabel {
    /// `ψ(C_t)`.
    C {
        t: usize,
    },
    /// `ψ*(C̄_t)`.
    CBar {
        t: usize,
    },
    /// Truncated `ψ(U_t^λ)`.
    U {
        t: usize,
        lambda: u32,
    },
    /// Truncated, conjugated `ψ*(V_t^λ)`.
    V {
        t: usize,
        lambda: u32,
    },
    Unlabeled,
}

/// An ordered list of `M` sequences sharing length and root order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Code {
    sequences: Vec<RootSequence>,
    label: CodeLabel,
}

impl Code {
    pub fn new(sequences: Vec<RootSequence>, label: CodeLabel) -> Result<Self> {
        let first = sequences
            .first()
            .ok_or_else(|| Error::Shape("a code needs at least one sequence".into()))?;
        if first.is_empty() {
            return Err(Error::Shape("empty sequence".into()));
        }
        for s in &sequences[1..] {
            if s.len() != first.len() || s.delta() != first.delta() {
                return Err(Error::Shape(format!(
                    "member of length {} over ω_{} in a code of length {} over ω_{}",
                    s.len(),
                    s.delta(),
                    first.len(),
                    first.delta()
                )));
            }
        }
        Ok(Self { sequences, label })
    }

    pub fn sequences(&self) -> &[RootSequence] {
        &self.sequences
    }

    pub fn label(&self) -> CodeLabel {
        self.label
    }

    /// `M`, the number of member sequences.
    pub fn code_size(&self) -> usize {
        self.sequences.len()
    }

    /// `N`, the common sequence length.
    pub fn length(&self) -> usize {
        self.sequences[0].len()
    }

    pub fn delta(&self) -> usize {
        self.sequences[0].delta()
    }

    pub fn promote(&self, target: usize) -> Result<Self> {
        let sequences = self
            .sequences
            .iter()
            .map(|s| s.promote(target))
            .collect::<Result<_>>()?;
        Ok(Self {
            sequences,
            label: self.label,
        })
    }
}

/// Parameter block of a code set. `p` and `s` are absent for CCCs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CodeSetParams {
    #[serde(rename = "K")]
    pub set_size: usize,
    #[serde(rename = "M")]
    pub code_size: usize,
    #[serde(rename = "N")]
    pub length: usize,
    #[serde(rename = "Z")]
    pub zcz_claimed: usize,
    pub q: u32,
    pub p: Option<u32>,
    pub m: usize,
    pub k: usize,
    pub s: Option<u32>,
    pub delta: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CodeSet {
    pub(crate) codes: Vec<Code>,
    pub(crate) params: CodeSetParams,
}

impl CodeSet {
    /// Checks that all codes share `(M, N, δ)` and agree with `params`.
    pub fn new(codes: Vec<Code>, params: CodeSetParams) -> Result<Self> {
        let first = codes
            .first()
            .ok_or_else(|| Error::Shape("a code set needs at least one code".into()))?;
        let shape = (first.code_size(), first.length(), first.delta());
        if let Some((i, c)) = codes
            .iter()
            .enumerate()
            .find(|(_, c)| (c.code_size(), c.length(), c.delta()) != shape)
        {
            return Err(Error::Shape(format!(
                "code {i} has (M, N, δ) = ({}, {}, {}), code 0 has {shape:?}",
                c.code_size(),
                c.length(),
                c.delta()
            )));
        }
        let actual = (codes.len(), shape.0, shape.1, shape.2);
        let declared = (
            params.set_size,
            params.code_size,
            params.length,
            params.delta,
        );
        if actual != declared {
            return Err(Error::Shape(format!(
                "parameters declare (K, M, N, δ) = {declared:?} but codes have {actual:?}"
            )));
        }
        if params.zcz_claimed == 0 || params.zcz_claimed > params.length {
            return Err(Error::InvalidZ {
                z: params.zcz_claimed,
                n: params.length,
            });
        }
        Ok(Self { codes, params })
    }

    pub fn codes(&self) -> &[Code] {
        &self.codes
    }

    pub fn code(&self, mu: usize) -> Result<&Code> {
        self.codes.get(mu).ok_or(Error::Index {
            index: mu,
            len: self.codes.len(),
        })
    }

    pub fn params(&self) -> &CodeSetParams {
        &self.params
    }

    /// `K`.
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// `M`.
    pub fn code_size(&self) -> usize {
        self.params.code_size
    }

    /// `N`.
    pub fn length(&self) -> usize {
        self.params.length
    }

    pub fn delta(&self) -> usize {
        self.params.delta
    }
}

/// Smallest `s ≥ 1` with `2^s ≥ p`.
pub fn minimal_s(p: u32) -> u32 {
    (p.max(2) - 1).ilog2() + 1
}

/// Which half of the CCC a component function belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CccFamily {
    C,
    CBar,
}

/// The member function of `C_t` or `C̄_t` selected by `(d_vec, d)`:
/// `f + (q/2)((d+t)·x + d·x_γ)` or `f̃ + (q/2)((d+t)·x̄ + d̄·x_γ)`.
pub fn component_function(
    f: &Gbf,
    cert: &PathCertificate,
    gamma: usize,
    family: CccFamily,
    t_vec: &[bool],
    d_vec: &[bool],
    d: bool,
) -> Result<Gbf> {
    let k = cert.deleted().len();
    if t_vec.len() != k || d_vec.len() != k {
        return Err(Error::Arity {
            expected: k,
            got: if t_vec.len() != k {
                t_vec.len()
            } else {
                d_vec.len()
            },
        });
    }
    if !cert.is_end(gamma) {
        return Err(Error::InvalidGamma(gamma));
    }
    let half = (f.modulus() / 2) as i64;
    let mut g = match family {
        CccFamily::C => f.clone(),
        CccFamily::CBar => f.negate_vars(),
    };
    for ((&v, &di), &ti) in cert.deleted().iter().zip(d_vec).zip(t_vec) {
        let w = half * (di as i64 + ti as i64);
        match family {
            CccFamily::C => g.add_term(&[v], w)?,
            CccFamily::CBar => {
                g.add_term(&[], w)?;
                g.add_term(&[v], -w)?;
            }
        }
    }
    let e = match family {
        CccFamily::C => d,
        CccFamily::CBar => !d,
    };
    g.add_term(&[gamma], half * e as i64)?;
    Ok(g)
}

/// Validates the graph condition and resolves `γ` (default: the end vertex
/// with the smaller index).
pub fn prepare(
    f: &Gbf,
    deleted: &[usize],
    gamma: Option<usize>,
) -> Result<(PathCertificate, usize)> {
    let graph = f.graph()?;
    let cert = check_path_after_deletion(&graph, deleted, f.modulus())?;
    let gamma = match gamma {
        Some(g) if cert.is_end(g) => g,
        Some(g) => return Err(Error::InvalidGamma(g)),
        None => cert.default_gamma(),
    };
    Ok((cert, gamma))
}

/// `(d_vec, d)` for codeword position `ν = d·2^k + Σ d_i 2^i`.
fn codeword_selectors(k: usize) -> impl Iterator<Item = (Vec<bool>, bool)> {
    (0..2usize << k).map(move |nu| (to_bits(nu & ((1 << k) - 1), k), nu >> k & 1 == 1))
}

/// The `(2^{k+1}, 2^{k+1}, 2^m)`-CCC `{ψ(C_t), ψ*(C̄_t) : 0 ≤ t < 2^k}`.
pub fn build_ccc(f: &Gbf, deleted: &[usize], gamma: Option<usize>) -> Result<CodeSet> {
    let (cert, gamma) = prepare(f, deleted, gamma)?;
    let k = deleted.len();
    let half = 1usize << k;
    let jobs: Vec<(CccFamily, usize)> = [CccFamily::C, CccFamily::CBar]
        .into_iter()
        .flat_map(|fam| (0..half).map(move |t| (fam, t)))
        .collect();
    let codes = jobs
        .into_par_iter()
        .map(|(fam, t)| {
            let t_vec = to_bits(t, k);
            let sequences = codeword_selectors(k)
                .map(|(d_vec, d)| {
                    let g = component_function(f, &cert, gamma, fam, &t_vec, &d_vec, d)?;
                    let seq = g.psi()?;
                    Ok(match fam {
                        CccFamily::C => seq,
                        CccFamily::CBar => seq.conjugate(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let label = match fam {
                CccFamily::C => CodeLabel::C { t },
                CccFamily::CBar => CodeLabel::CBar { t },
            };
            Code::new(sequences, label)
        })
        .collect::<Result<Vec<_>>>()?;
    let n = 1usize << f.num_vars();
    CodeSet::new(
        codes,
        CodeSetParams {
            set_size: 2 * half,
            code_size: 2 * half,
            length: n,
            zcz_claimed: n,
            q: f.modulus(),
            p: None,
            m: f.num_vars(),
            k,
            s: None,
            delta: f.modulus() as usize,
        },
    )
}

fn zccs_params(f: &Gbf, k: usize, p: u32, s: u32) -> CodeSetParams {
    let m = f.num_vars();
    CodeSetParams {
        set_size: (p as usize) << (k + 1),
        code_size: 2usize << k,
        length: (p as usize) << m,
        zcz_claimed: 1usize << m,
        q: f.modulus(),
        p: Some(p),
        m,
        k,
        s: Some(s),
        delta: (p as usize).lcm(&(f.modulus() as usize)),
    }
}

/// The `(p·2^{k+1}, 2^m)`-ZCCS of `2^{k+1}` sequences of length `p·2^m` built
/// from the pseudo-Boolean sets `U_t^λ` and `V_t^λ`, each sequence truncated
/// to its first `p·2^m` entries (V sequences then conjugated).
///
/// `s` only sets the untruncated length `2^{m+s}`; it must satisfy
/// `p ≤ 2^s`.
pub fn build_zccs(
    f: &Gbf,
    deleted: &[usize],
    gamma: Option<usize>,
    p: u32,
    s: u32,
) -> Result<CodeSet> {
    check_pbf_params(f, p, s)?;
    let (cert, gamma) = prepare(f, deleted, gamma)?;
    let k = deleted.len();
    let keep = (p as usize) << f.num_vars();
    let jobs: Vec<(PbfFamily, u32, usize)> = [PbfFamily::F, PbfFamily::G]
        .into_iter()
        .flat_map(|fam| {
            (0..p).flat_map(move |lambda| (0..1usize << k).map(move |t| (fam, lambda, t)))
        })
        .collect();
    let codes = jobs
        .into_par_iter()
        .map(|(fam, lambda, t)| {
            let spec = PbfSpec::new(f.clone(), p, s, lambda, fam)?;
            let t_vec = to_bits(t, k);
            let sequences = codeword_selectors(k)
                .map(|(d_vec, d)| {
                    let seq = psi_pbf(&spec, &d_vec, &t_vec, d, &cert, gamma)?.truncate(keep)?;
                    Ok(match fam {
                        PbfFamily::F => seq,
                        PbfFamily::G => seq.conjugate(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let label = match fam {
                PbfFamily::F => CodeLabel::U { t, lambda },
                PbfFamily::G => CodeLabel::V { t, lambda },
            };
            Code::new(sequences, label)
        })
        .collect::<Result<Vec<_>>>()?;
    CodeSet::new(codes, zccs_params(f, k, p, s))
}

/// The same ZCCS assembled from the CCC: U-code `(t, λ)` concatenates the
/// blocks `ω_p^{λi}·ψ(C_t)` and V-code `(t, λ)` the blocks
/// `(ω_p^{λi}·ψ(C̄_t))*`, for `i = 0, …, p-1`. Recorded with the minimal `s`.
pub fn build_zccs_by_concatenation(
    f: &Gbf,
    deleted: &[usize],
    gamma: Option<usize>,
    p: u32,
) -> Result<CodeSet> {
    let s = minimal_s(p);
    check_pbf_params(f, p, s)?;
    let ccc = build_ccc(f, deleted, gamma)?;
    let k = deleted.len();
    let half = 1usize << k;
    let params = zccs_params(f, k, p, s);
    let delta = params.delta;
    let step = (delta / p as usize) as i64;

    let mut codes = Vec::with_capacity(params.set_size);
    for conj_family in [false, true] {
        for lambda in 0..p {
            for t in 0..half {
                let source = &ccc.codes[if conj_family { half + t } else { t }];
                let sequences = source
                    .sequences()
                    .iter()
                    .map(|seq| {
                        let base = if conj_family {
                            seq.conjugate()
                        } else {
                            seq.clone()
                        };
                        let base = base.promote(delta)?;
                        let blocks: Vec<RootSequence> = (0..p as i64)
                            .map(|i| {
                                let b = base.mul_root(step * lambda as i64 * i);
                                if conj_family {
                                    b.conjugate()
                                } else {
                                    b
                                }
                            })
                            .collect();
                        RootSequence::concat(&blocks)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let label = if conj_family {
                    CodeLabel::V { t, lambda }
                } else {
                    CodeLabel::U { t, lambda }
                };
                codes.push(Code::new(sequences, label)?);
            }
        }
    }
    CodeSet::new(codes, params)
}

//! Dephasing and amplitude-damping Kraus channels on a qutrit, their
//! extension to the accelerated `{0, 1, 2, P}` space, and multi-local /
//! global application to a bipartite state.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{kron, pairwise_sum, ComplexMatrix, DensityMatrix, ONE};

/// Completeness tolerance for `sum E^dagger E = I`.
pub const TOL_COMPLETENESS: f64 = 1e-12;
/// Pre-normalization traces at or below this are treated as an annihilated state.
pub const MIN_GLOBAL_TRACE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct NoiseStrength(f64);

impl NoiseStrength {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::OutOfRange {
                name: "gamma",
                value: gamma,
                min: 0.0,
                max: 1.0,
            });
        }
        Ok(NoiseStrength(gamma))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    Dephasing,
    AmplitudeDamping,
}

impl ChannelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ChannelKind::Dephasing => "dephasing",
            ChannelKind::AmplitudeDamping => "amplitude",
        }
    }

    pub fn kraus(self, gamma: NoiseStrength) -> KrausChannel {
        match self {
            ChannelKind::Dephasing => dephasing_kraus(gamma),
            ChannelKind::AmplitudeDamping => amplitude_damping_kraus(gamma),
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dephasing" => Ok(ChannelKind::Dephasing),
            "amplitude" | "amplitude-damping" => Ok(ChannelKind::AmplitudeDamping),
            other => Err(Error::Config(format!("unknown channel `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Locality {
    #[default]
    None,
    MultiLocal,
    Global,
}

impl Locality {
    pub fn as_str(self) -> &'static str {
        match self {
            Locality::None => "none",
            Locality::MultiLocal => "multi-local",
            Locality::Global => "global",
        }
    }
}

impl fmt::Display for Locality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Locality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Locality::None),
            "multi-local" => Ok(Locality::MultiLocal),
            "global" => Ok(Locality::Global),
            other => Err(Error::Config(format!("unknown locality `{other}`"))),
        }
    }
}

/// How the global channel is evaluated. The global Kraus set is not
/// trace preserving, so both modes renormalize and report the lost weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GlobalMode {
    /// 27 terms `(E_i⊗E_i)(E_j⊗I)(I⊗E_k)` summed directly.
    #[default]
    LiteralRenormalized,
    /// Both local channels first, then the correlated terms `E_i⊗E_i`.
    Composed,
}

impl GlobalMode {
    pub fn as_str(self) -> &'static str {
        match self {
            GlobalMode::LiteralRenormalized => "literal",
            GlobalMode::Composed => "composed",
        }
    }
}

impl fmt::Display for GlobalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GlobalMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" | "literal-renormalized" => Ok(GlobalMode::LiteralRenormalized),
            "composed" => Ok(GlobalMode::Composed),
            other => Err(Error::Config(format!("unknown global mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct KrausChannel {
    pub kind: ChannelKind,
    pub gamma: NoiseStrength,
    /// Ordered E_1, E_2, E_3.
    pub operators: Vec<ComplexMatrix>,
    pub local_dim: usize,
}

/// `E1 = diag(1, sqrt(1-g), sqrt(1-g))`, `E2 = diag(0, sqrt g, 0)`, `E3 = diag(0, 0, sqrt g)`.
pub fn dephasing_kraus(gamma: NoiseStrength) -> KrausChannel {
    let g = gamma.value();
    let keep = (1.0 - g).sqrt();
    let flip = g.sqrt();
    KrausChannel {
        kind: ChannelKind::Dephasing,
        gamma,
        operators: vec![
            ComplexMatrix::diag_real(&[1.0, keep, keep]),
            ComplexMatrix::diag_real(&[0.0, flip, 0.0]),
            ComplexMatrix::diag_real(&[0.0, 0.0, flip]),
        ],
        local_dim: 3,
    }
}

/// `E1 = diag(1, sqrt(1-g), sqrt(1-g))`, `E2 = sqrt g |0><1|`, `E3 = sqrt g |0><2|`.
pub fn amplitude_damping_kraus(gamma: NoiseStrength) -> KrausChannel {
    let g = gamma.value();
    let keep = (1.0 - g).sqrt();
    let decay = g.sqrt();
    let mut e2 = ComplexMatrix::zeros(3, 3);
    e2[(0, 1)] = ONE * decay;
    let mut e3 = ComplexMatrix::zeros(3, 3);
    e3[(0, 2)] = ONE * decay;
    KrausChannel {
        kind: ChannelKind::AmplitudeDamping,
        gamma,
        operators: vec![ComplexMatrix::diag_real(&[1.0, keep, keep]), e2, e3],
        local_dim: 3,
    }
}

/// Lifts a qutrit channel to `{0, 1, 2, P}`: the pair level passes through
/// `E1` with unit weight and is untouched by the other operators.
pub fn extend_to_acc_space(ch: &KrausChannel) -> Result<KrausChannel> {
    if ch.local_dim != 3 {
        return Err(Error::InvalidDimension(format!(
            "extension expects a qutrit channel, got local_dim {}",
            ch.local_dim
        )));
    }
    let operators = ch
        .operators
        .iter()
        .enumerate()
        .map(|(n, e)| {
            let mut big = ComplexMatrix::zeros(4, 4);
            for i in 0..3 {
                for j in 0..3 {
                    big[(i, j)] = e[(i, j)];
                }
            }
            if n == 0 {
                big[(3, 3)] = ONE;
            }
            big
        })
        .collect();
    Ok(KrausChannel {
        kind: ch.kind,
        gamma: ch.gamma,
        operators,
        local_dim: 4,
    })
}

impl KrausChannel {
    pub fn new(kind: ChannelKind, gamma: NoiseStrength, local_dim: usize) -> Result<Self> {
        let base = kind.kraus(gamma);
        match local_dim {
            3 => Ok(base),
            4 => extend_to_acc_space(&base),
            other => Err(Error::InvalidDimension(format!(
                "channels are defined on 3 or 4 levels, not {other}"
            ))),
        }
    }

    /// `max |sum E^dagger E - I|` entrywise.
    pub fn completeness_deviation(&self) -> f64 {
        let terms: Vec<_> = self.operators.iter().map(|e| &e.adjoint() * e).collect();
        let sum = pairwise_sum(&terms).unwrap_or_else(|| ComplexMatrix::zeros(self.local_dim, self.local_dim));
        sum.max_abs_diff(&ComplexMatrix::identity(self.local_dim))
    }

    pub fn check_complete(&self) -> Result<()> {
        let deviation = self.completeness_deviation();
        if deviation > TOL_COMPLETENESS {
            return Err(Error::IncompleteChannel { deviation });
        }
        Ok(())
    }

    /// Single-system action `sum E rho E^dagger`.
    pub fn apply_local(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.rows() != self.local_dim || !rho.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "{}-level channel applied to {}x{} matrix",
                self.local_dim,
                rho.rows(),
                rho.cols()
            )));
        }
        let terms = self
            .operators
            .iter()
            .map(|e| e.conjugate(rho))
            .collect::<Result<Vec<_>>>()?;
        Ok(pairwise_sum(&terms).expect("channels have operators"))
    }
}

fn check_dims(rho: &DensityMatrix, ch_a: &KrausChannel, ch_b: &KrausChannel) -> Result<()> {
    let shape = rho.shape();
    if shape.dim_a != ch_a.local_dim || shape.dim_b != ch_b.local_dim {
        return Err(Error::ShapeMismatch(format!(
            "channels on {}⊗{} levels applied to a {shape} state",
            ch_a.local_dim, ch_b.local_dim
        )));
    }
    ch_a.check_complete()?;
    ch_b.check_complete()
}

fn sum_conjugations(kraus: &[ComplexMatrix], rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let terms = kraus
        .iter()
        .map(|k| k.conjugate(rho))
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_sum(&terms).expect("non-empty Kraus set"))
}

/// `sum_ij (E_i ⊗ F_j) rho (E_i ⊗ F_j)^dagger`.
pub fn apply_multilocal(rho: &DensityMatrix, ch_a: &KrausChannel, ch_b: &KrausChannel) -> Result<DensityMatrix> {
    check_dims(rho, ch_a, ch_b)?;
    let kraus: Vec<_> = ch_a
        .operators
        .iter()
        .flat_map(|ea| ch_b.operators.iter().map(move |eb| kron(ea, eb)))
        .collect();
    DensityMatrix::new(rho.shape(), sum_conjugations(&kraus, rho.matrix())?)
}

#[derive(Debug, Clone)]
pub struct GlobalOutput {
    /// Renormalized to unit trace.
    pub state: DensityMatrix,
    /// Trace before renormalization.
    pub pre_norm_trace: f64,
}

/// The correlated global channel; see [`GlobalMode`].
pub fn apply_global(rho: &DensityMatrix, ch: &KrausChannel, mode: GlobalMode) -> Result<GlobalOutput> {
    check_dims(rho, ch, ch)?;
    let d = ch.local_dim;
    let id = ComplexMatrix::identity(d);
    let correlated: Vec<_> = ch.operators.iter().map(|e| kron(e, e)).collect();

    let sigma = match mode {
        GlobalMode::LiteralRenormalized => {
            let mut kraus = Vec::with_capacity(correlated.len() * ch.operators.len().pow(2));
            for eab in &correlated {
                for ej in &ch.operators {
                    let left = eab * &kron(ej, &id);
                    for ek in &ch.operators {
                        kraus.push(&left * &kron(&id, ek));
                    }
                }
            }
            sum_conjugations(&kraus, rho.matrix())?
        }
        GlobalMode::Composed => {
            let local = apply_multilocal(rho, ch, ch)?;
            sum_conjugations(&correlated, local.matrix())?
        }
    };

    let t = sigma.trace().re;
    if t <= MIN_GLOBAL_TRACE {
        return Err(Error::AnnihilatedState { trace: t });
    }
    Ok(GlobalOutput {
        state: DensityMatrix::new(rho.shape(), sigma.scale(1.0 / t))?,
        pre_norm_trace: t,
    })
}

//! Level-zero elliptic parameters: tame characters, admissible pairs, the
//! character of the division algebra on its named elements, the
//! Jacquet–Langlands character value and the Harris summary table.

use serde::Serialize;

use crate::arith::{divisors, prime_power};
use crate::cyclotomic::{Cyclotomic, RootOfUnity};
use crate::dl::{character_orbits, dimension, frobenius_eigenvalue, CharacterData, WeilScalar};
use crate::error::{Error, Result};
use crate::ffield::FiniteField;

/// A character of K_f^× trivial on 1 + ϖO_f: its residue part and its value at ϖ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TameCharacter {
    pub f: u32,
    pub residue: CharacterData,
    pub varpi: RootOfUnity,
}

impl TameCharacter {
    /// Value on ζ·ϖ^v·u with ζ = g^j Teichmüller and u a principal unit.
    pub fn value(&self, j: u64, v: i64) -> RootOfUnity {
        self.residue.at_power(j).mul(&self.varpi.pow(v))
    }
}

/// The extension (ζ, ϖ) ↦ θ′(ζ)·θ′((−1)^{e−1}).
pub fn extend_tame(residue: CharacterData, e: u32) -> TameCharacter {
    let varpi = if e.is_multiple_of(2) { residue.at_minus_one() } else { RootOfUnity::one() };
    TameCharacter { f: residue.f, residue, varpi }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdmissiblePair {
    pub f: u32,
    pub theta: TameCharacter,
}

impl AdmissiblePair {
    pub fn new(theta: TameCharacter) -> Result<Self> {
        if !theta.residue.is_primitive() {
            return Err(Error::Invalid(format!(
                "residue character with exponent {} factors through F_{{q^{}}}",
                theta.residue.k, theta.residue.level
            )));
        }
        Ok(AdmissiblePair { f: theta.f, theta })
    }

    /// The pair attached to an f-primitive residue character and e = d/f.
    pub fn from_residue(residue: CharacterData, e: u32) -> Result<Self> {
        Self::new(extend_tame(residue, e))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DValue {
    pub element: String,
    /// reduced norm to K_f, as (Teichmüller exponent description, ϖ-valuation)
    pub norm: String,
    pub value: RootOfUnity,
}

#[derive(Debug, Clone, Serialize)]
pub struct DCharacterTable {
    pub e: u32,
    pub f: u32,
    pub rows: Vec<DValue>,
}

/// Θ(bu) = θ̃′(Nr_{B/K_f}(b)) on the named elements of B^× U_D^1, where B is the
/// centralizer of K_f in D, of reduced degree e over K_f.
pub fn theta_on_d(pair: &AdmissiblePair, e: u32) -> Result<DCharacterTable> {
    if e == 0 {
        return Err(Error::Invalid("e must be positive".into()));
    }
    let th = &pair.theta;
    if extend_tame(th.residue, e).varpi != th.varpi {
        return Err(Error::Invalid(format!("pair was not extended for e={e}")));
    }
    let n = th.residue.n;
    let sign_exp = |parity: u32| -> u64 {
        if parity % 2 == 1 && th.residue.q % 2 == 1 {
            n / 2
        } else {
            0
        }
    };
    let mut rows = vec![DValue { element: "u in U^1_D".into(), norm: "1".into(), value: RootOfUnity::one() }];
    // Teichmüller ζ = g ∈ K_f: Nr(ζ) = ζ^e
    rows.push(DValue {
        element: "g (Teichmüller generator)".into(),
        norm: format!("g^{e}"),
        value: th.value(e as u64, 0),
    });
    // Π_D^f is a uniformizer of B with (Π_D^f)^e = ϖ, so Nr = (−1)^{e−1}ϖ
    let pi_value = th.value(sign_exp(e - 1), 1);
    if pi_value != RootOfUnity::one() {
        return Err(Error::Invalid(format!("Θ(Π_D^f) = {pi_value}, expected 1")));
    }
    rows.push(DValue { element: "Pi_D^f".into(), norm: format!("(-1)^{}·ϖ", e - 1), value: pi_value });
    // elliptic b = Π_D^i g Π_D^{−i} Π_D^f with b^e ~ φ^i(g)ϖ: Nr = (−1)^{e−1}φ^i(g)ϖ
    let q = th.residue.q;
    for i in 0..pair.f {
        let frob = (0..i).fold(1u128, |acc, _| acc * q as u128 % n as u128) as u64;
        let value = th.value(sign_exp(e - 1) + frob, 1);
        rows.push(DValue {
            element: format!("elliptic b, b^e ~ phi^{i}(g)·ϖ"),
            norm: format!("(-1)^{}·g^{{q^{i}}}·ϖ", e - 1),
            value,
        });
    }
    Ok(DCharacterTable { e, f: pair.f, rows })
}

/// The residue field F_{q^f} on which θ′ is defined.
pub fn residue_field(q: u64, f: u32) -> Result<FiniteField> {
    let (p, r) = prime_power(q).ok_or_else(|| Error::Invalid(format!("q={q} is not a prime power")))?;
    FiniteField::new(p, r, f)
}

/// Σ_{i<f} θ′(α^{q^i}) for α generating F_{q^f} over F_q, with θ′ read
/// against the certified generator of `field`.
pub fn jl_character(pair: &AdmissiblePair, field: &FiniteField, alpha: u32) -> Result<Cyclotomic> {
    let th = &pair.theta.residue;
    if field.q != th.q || field.m != th.f {
        return Err(Error::DimensionMismatch(th.f as usize, field.m as usize));
    }
    if alpha == 0 || alpha as u64 >= field.size || field.degree_over_q(alpha) != th.f {
        return Err(Error::Invalid(format!("element {alpha} does not generate F_{{q^{}}}", th.f)));
    }
    let n = th.n;
    let mut total = Cyclotomic::zero(n);
    for i in 0..th.f {
        let j = field.log(field.frob(alpha, i)).unwrap();
        total = total.add(&Cyclotomic::from_root(n, &th.at_power(j)));
    }
    Ok(total)
}

/// First α (in element order) generating F_{q^f} with nonzero character sum.
pub fn find_witness(pair: &AdmissiblePair, field: &FiniteField) -> Option<(u32, Cyclotomic)> {
    field
        .elements()
        .filter(|&a| a != 0 && field.degree_over_q(a) == pair.f)
        .find_map(|a| jl_character(pair, field, a).ok().filter(|v| !v.is_zero()).map(|v| (a, v)))
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub d: u32,
    pub f: u32,
    pub i: u32,
    pub permutation_sign: i64,
    pub koszul_sign: i64,
    pub trace_sign: i64,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub nonzero: bool,
}

/// Compares the elliptic character value assembled from its three factors
/// with (−1)^{d−1+i} times the division-algebra character value.
pub fn elliptic_character_identity(
    d: u32,
    i: u32,
    pair: &AdmissiblePair,
    field: &FiniteField,
    alpha: u32,
) -> Result<IdentityReport> {
    let f = pair.f;
    if !d.is_multiple_of(f) {
        return Err(Error::Invalid(format!("f={f} does not divide d={d}")));
    }
    let e = d / f;
    if i >= e {
        return Err(Error::Invalid(format!("i={i} out of range 0..{e}")));
    }
    let sgn = |k: u32| if k.is_multiple_of(2) { 1i64 } else { -1 };
    let permutation_sign = sgn(e - 1 - i);
    let koszul_sign = sgn((f - 1) * (f - 1) * (e - 1));
    let trace_sign = sgn(f - 1);
    let sum = jl_character(pair, field, alpha)?;
    let lhs = sum.scale(permutation_sign * koszul_sign * trace_sign);
    let rhs = sum.scale(sgn(d - 1 + i));
    Ok(IdentityReport {
        d,
        f,
        i,
        permutation_sign,
        koszul_sign,
        trace_sign,
        equal: lhs == rhs,
        nonzero: !lhs.is_zero(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

/// Number of f-primitive characters of F_{q^f}^×, by Möbius-style sieve.
pub fn enumerate_primitive(f: u32, q: u64) -> Result<u64> {
    if f == 0 || prime_power(q).is_none() {
        return Err(Error::Invalid(format!("bad parameters f={f} q={q}")));
    }
    let mut count = std::collections::BTreeMap::new();
    for g in divisors(f as u64) {
        let total = q.checked_pow(g as u32).ok_or_else(|| Error::Unsupported(format!("q^{g} overflows")))? - 1;
        let smaller: u64 = divisors(g).into_iter().filter(|&h| h < g).map(|h| count[&h]).sum();
        count.insert(g, total - smaller);
    }
    Ok(count[&(f as u64)])
}

#[derive(Debug, Clone, Serialize)]
pub struct EllipticParameter {
    pub d: u32,
    pub f: u32,
    pub e: u32,
    pub i: u32,
    /// the two admissible index sets {1..i} and {e−i..e−1}, left unresolved
    pub options: [Vec<u32>; 2],
    pub pair: AdmissiblePair,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeilDatum {
    pub dim: u32,
    pub inertia: CharacterData,
    pub eigenvalue: WeilScalar,
}

#[derive(Debug, Clone, Serialize)]
pub struct HarrisRow {
    pub d: u32,
    pub q: u64,
    pub f: u32,
    pub theta_exponent: u64,
    pub i: u32,
    pub degree: u32,
    pub parameter: EllipticParameter,
    pub dim: num_bigint::BigInt,
    pub weil: WeilDatum,
    pub lj_sign: i64,
    pub tag: String,
}

impl HarrisRow {
    pub fn options_label(&self) -> String {
        let fmt = |s: &[u32]| format!("{{{}}}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        format!("{} or {}", fmt(&self.parameter.options[0]), fmt(&self.parameter.options[1]))
    }
}

/// One row per i for the character θ of F_{q^d}^× with the given exponent.
pub fn harris_summary(d: u32, q: u64, theta_exponent: u64) -> Result<Vec<HarrisRow>> {
    let orbits = character_orbits(d, q)?;
    let n = q.pow(d) - 1;
    let k = theta_exponent % n;
    let orbit = orbits
        .iter()
        .find(|o| {
            let mut j = o.representative;
            (0..o.size).any(|_| {
                let hit = j == k;
                j = (j as u128 * q as u128 % n as u128) as u64;
                hit
            })
        })
        .ok_or_else(|| Error::Invalid(format!("no orbit contains exponent {k}")))?;
    let f = orbit.f;
    let e = d / f;
    let residue = CharacterData::new(q, f, k / (n / (q.pow(f) - 1)))?;
    let pair = AdmissiblePair::from_residue(residue, e)?;
    let mut rows = Vec::new();
    for i in 0..e {
        let parameter = EllipticParameter { d, f, e, i, options: [(1..=i).collect(), (e - i..e).collect()], pair };
        let weil = WeilDatum { dim: f, inertia: residue, eigenvalue: frobenius_eigenvalue(d, f, i, &residue)? };
        rows.push(HarrisRow {
            d,
            q,
            f,
            theta_exponent: residue.k,
            i,
            degree: d - 1 + i,
            parameter,
            dim: dimension(d, f, i, q)?,
            weil,
            lj_sign: if i % 2 == 0 { 1 } else { -1 },
            tag: if i == 0 { "discrete series, JL match".into() } else { String::new() },
        });
    }
    Ok(rows)
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `left * unknown * right`; a missing side is an identity. Names ending in
/// `*` are conjugate-transposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermSpec {
    pub left: Option<&'static str>,
    pub unknown: &'static str,
    pub right: Option<&'static str>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquationSpec {
    pub terms: &'static [TermSpec],
    pub rhs: &'static str,
}

const fn t(left: &'static str, unknown: &'static str, right: &'static str) -> TermSpec {
    TermSpec {
        left: if left.is_empty() { None } else { Some(left) },
        unknown,
        right: if right.is_empty() { None } else { Some(right) },
    }
}

const fn eq(terms: &'static [TermSpec], rhs: &'static str) -> EquationSpec {
    EquationSpec { terms, rhs }
}

/// The matrix-equation systems with rank-based solvability criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemKind {
    /// `AXE + BYH = Φ, CXF = Ψ, DXG = Ω`.
    TwoUnknown,
    /// `AXE + BY + ZH = Φ, CXF = Ψ, DXG = Ω`.
    ThreeUnknown,
    /// `AXE = Φ, CXF = Ψ, DXG = Ω`.
    ClassicalTriple,
    /// `AXA* + BYB* = Φ, CXC* = Ψ, DXD* = Ω` with `X, Y` Hermitian.
    HermitianCongruence,
    /// `AXA* + BYB* = Φ, CXD = Ω` with `X, Y` Hermitian.
    HermitianCongruenceMixed,
    /// `AXA* + BY + (BY)* = Φ, CXC* = Ψ, DXD* = Ω` with `X` Hermitian.
    HermitianSymmetricSum,
    /// `AXA* + BY + (BY)* = Φ, CXD = Ω` with `X` Hermitian.
    HermitianSymmetricSumMixed,
}

const TWO_UNKNOWN: &[&str] = &[
    "[Phi A; H 0]=[A]+[H]",
    "[Phi B; E 0]=[B]+[E]",
    "[A B Phi]=[A B]",
    "[E; H; Phi]=[E; H]",
    "[C Psi]=[C]",
    "[D Omega]=[D]",
    "[F; Psi]=[F]",
    "[G; Omega]=[G]",
    "[Psi 0 C; 0 -Omega D; F G 0]=[C; D]+[F G]",
    "[0 0 E F; A B -Phi 0; C 0 0 Psi]=[A B; C 0]+[E F]",
    "[0 E F; 0 H 0; A -Phi 0; C 0 Psi]=[E F; H 0]+[A; C]",
    "[0 0 E G; A B -Phi 0; D 0 0 Omega]=[A B; D 0]+[E G]",
    "[0 E G; 0 H 0; A -Phi 0; D 0 Omega]=[E G; H 0]+[A; D]",
    "[0 0 E F G; 0 0 H 0 0; A A -Phi 0 0; C 0 0 Psi 0; 0 D 0 0 Omega]=[E F G; H 0 0]+[A A; C 0; 0 D]",
    "[0 0 E F 0; 0 0 E 0 G; A B -Phi 0 0; C 0 0 Psi 0; D 0 0 0 Omega]=[A B; C 0; D 0]+[E F 0; E 0 G]",
    "[0 0 0 E F G; A A B -Phi 0 0; C 0 0 0 Psi 0; 0 D 0 0 0 Omega]=[E F G]+[A A B; C 0 0; 0 D 0]",
    "[0 E F 0; 0 E 0 G; 0 H 0 0; A -Phi 0 0; C 0 Psi 0; D 0 0 Omega]=[A; C; D]+[E F 0; E 0 G; H 0 0]",
    "[0 0 0 0 0 0 H; 0 0 0 G 0 E 0; 0 0 0 0 F E E; 0 C 0 0 -Psi 0 0; 0 0 D Omega 0 0 0; 0 A A 0 0 0 Phi; B 0 A 0 0 -Phi 0]=[0 A B; A A 0; C 0 0; 0 D 0]+[0 E F 0; E E 0 G; H 0 0 0]",
];

const THREE_UNKNOWN: &[&str] = &[
    "[Phi A B; H 0 0]=[A B]+[H]",
    "[C Psi]=[C]",
    "[D Omega]=[D]",
    "[Phi B; E 0; H 0]=[B]+[E; H]",
    "[F; Psi]=[F]",
    "[G; Omega]=[G]",
    "[Phi 0 A B; 0 -Psi C 0; E F 0 0; H 0 0 0]=[A B; C 0]+[E F; H 0]",
    "[Phi 0 A B; 0 -Omega D 0; E G 0 0; H 0 0 0]=[A B; D 0]+[E G; H 0]",
    "[Psi 0 C; 0 -Omega D; F G 0]=[C; D]+[F G]",
    "[Phi 0 0 A A B; 0 -Psi 0 C 0 0; 0 0 -Omega 0 D 0; E F G 0 0 0; H 0 0 0 0 0]=[A A B; C 0 0; 0 D 0]+[E F G; H 0 0]",
    "[Phi 0 0 A B; 0 -Psi 0 C 0; 0 0 -Omega D 0; E F 0 0 0; E 0 G 0 0; H 0 0 0 0]=[A B; C 0; D 0]+[E F 0; E 0 G; H 0 0]",
];

const HERMITIAN_CONGRUENCE: &[&str] = &[
    "[Phi A; B* 0]=[A]+[B]",
    "[A B Phi]=[A B]",
    "[C Psi]=[C]",
    "[D Omega]=[D]",
    "[Psi 0 C; 0 -Omega D; C* D* 0]=2[C; D]",
    "[0 0 A* C*; A B -Phi 0; C 0 0 Psi]=[A B; C 0]+[A; C]",
    "[0 0 A* D*; A B -Phi 0; D 0 0 Omega]=[A B; D 0]+[A; D]",
    "[0 0 A* C* D*; 0 0 B* 0 0; A A -Phi 0 0; C 0 0 Psi 0; 0 D 0 0 Omega]=[A B; C 0; D 0]+[A A; C 0; 0 D]",
    "[0 0 0 A* C* D*; A A B -Phi 0 0; C 0 0 0 Psi 0; 0 D 0 0 0 Omega]=[A; C; D]+[A A B; C 0 0; 0 D 0]",
    "[0 0 0 0 0 0 B*; 0 0 0 D* 0 A* 0; 0 0 0 0 C* A* A*; 0 C 0 0 -Psi 0 0; 0 0 D Omega 0 0 0; 0 A A 0 0 0 Phi; B 0 A 0 0 -Phi 0]=2[0 A B; A A 0; C 0 0; 0 D 0]",
];

const HERMITIAN_CONGRUENCE_MIXED: &[&str] = &[
    "[Phi A; B* 0]=[A]+[B]",
    "[A B Phi]=[A B]",
    "[C Omega]=[C]",
    "[D; Omega]=[D]",
    "[Omega 0 C; 0 -Omega* D*; D C* 0]=2[C; D*]",
    "[0 0 A* D; A B -Phi 0; C 0 0 Omega]=[A B; C 0]+[A* D]",
    "[0 A* D; 0 B* 0; A -Phi 0; C 0 Omega]=[A* D; B* 0]+[A; C]",
    "[0 0 A* D C*; 0 0 B* 0 0; A A -Phi 0 0; C 0 0 Omega 0; 0 D* 0 0 Omega*]=[A B; C 0; D* 0]+[A A; C 0; 0 D*]",
    "[0 0 0 A* D C*; A A B -Phi 0 0; C 0 0 0 Omega 0; 0 D* 0 0 0 Omega*]=[A; C; D*]+[A A B; C 0 0; 0 D* 0]",
    "[0 0 0 0 0 0 B*; 0 0 0 C* 0 A* 0; 0 0 0 0 D A* A*; 0 C 0 0 -Omega 0 0; 0 0 D* Omega* 0 0 0; 0 A A 0 0 0 Phi; B 0 A 0 0 -Phi 0]=2[0 A B; A A 0; C 0 0; 0 D* 0]",
];

const HERMITIAN_SYMMETRIC_SUM: &[&str] = &[
    "[Phi A B; B* 0 0]=[A B]+[B]",
    "[C Psi]=[C]",
    "[D Omega]=[D]",
    "[Phi 0 A B; 0 -Psi C 0; A* C* 0 0; B* 0 0 0]=2[A B; C 0]",
    "[Phi 0 A B; 0 -Omega D 0; A* D* 0 0; B* 0 0 0]=2[A B; D 0]",
    "[Psi 0 C; 0 -Omega D; C* D* 0]=2[C; D]",
    "[Phi 0 0 A A B; 0 -Psi 0 C 0 0; 0 0 -Omega 0 D 0; A* C* D* 0 0 0; B* 0 0 0 0 0]=[A A B; C 0 0; 0 D 0]+[A B; C 0; D 0]",
];

const HERMITIAN_SYMMETRIC_SUM_MIXED: &[&str] = &[
    "[Phi A B; B* 0 0]=[A B]+[B]",
    "[C Omega]=[C]",
    "[D; Omega]=[D]",
    "[Phi 0 A B; 0 -Omega C 0; A* D 0 0; B* 0 0 0]=[A B; C 0]+[A B; D* 0]",
    "[Omega 0 C; 0 -Omega* D*; D C* 0]=2[C; D*]",
    "[Phi 0 0 A A B; 0 -Omega 0 C 0 0; 0 0 -Omega* 0 D* 0; A* D C* 0 0 0; B* 0 0 0 0 0]=[A A B; C 0 0; 0 D* 0]+[A B; C 0; D* 0]",
];

const GENERAL_PSI: EquationSpec = eq(&[t("C", "X", "F")], "Psi");
const GENERAL_OMEGA: EquationSpec = eq(&[t("D", "X", "G")], "Omega");
const CONG_PHI: EquationSpec = eq(&[t("A", "X", "A*"), t("B", "Y", "B*")], "Phi");
const CONG_PSI: EquationSpec = eq(&[t("C", "X", "C*")], "Psi");
const CONG_OMEGA: EquationSpec = eq(&[t("D", "X", "D*")], "Omega");
const MIXED_OMEGA: EquationSpec = eq(&[t("C", "X", "D")], "Omega");
const MIXED_OMEGA_STAR: EquationSpec = eq(&[t("D*", "X", "C*")], "Omega*");
const SYM_PHI: EquationSpec = eq(&[t("A", "X", "A*"), t("B", "Y", ""), t("", "Y*", "B*")], "Phi");
const SYM_PHI_SPLIT: EquationSpec = eq(&[t("A", "X", "A*"), t("B", "Y", ""), t("", "Z", "B*")], "Phi");

const TWO_EQS: &[EquationSpec] = &[
    eq(&[t("A", "X", "E"), t("B", "Y", "H")], "Phi"),
    GENERAL_PSI,
    GENERAL_OMEGA,
];
const THREE_EQS: &[EquationSpec] = &[
    eq(&[t("A", "X", "E"), t("B", "Y", ""), t("", "Z", "H")], "Phi"),
    GENERAL_PSI,
    GENERAL_OMEGA,
];
const CLASSICAL_EQS: &[EquationSpec] = &[eq(&[t("A", "X", "E")], "Phi"), GENERAL_PSI, GENERAL_OMEGA];
const CONG_EQS: &[EquationSpec] = &[CONG_PHI, CONG_PSI, CONG_OMEGA];
const CONG_MIXED_EQS: &[EquationSpec] = &[CONG_PHI, MIXED_OMEGA];
const CONG_MIXED_ORACLE: &[EquationSpec] = &[CONG_PHI, MIXED_OMEGA, MIXED_OMEGA_STAR];
const SYM_EQS: &[EquationSpec] = &[SYM_PHI, CONG_PSI, CONG_OMEGA];
const SYM_ORACLE: &[EquationSpec] = &[SYM_PHI_SPLIT, CONG_PSI, CONG_OMEGA];
const SYM_MIXED_EQS: &[EquationSpec] = &[SYM_PHI, MIXED_OMEGA];
const SYM_MIXED_ORACLE: &[EquationSpec] = &[SYM_PHI_SPLIT, MIXED_OMEGA, MIXED_OMEGA_STAR];

impl SystemKind {
    pub const ALL: [SystemKind; 7] = [
        SystemKind::TwoUnknown,
        SystemKind::ThreeUnknown,
        SystemKind::ClassicalTriple,
        SystemKind::HermitianCongruence,
        SystemKind::HermitianCongruenceMixed,
        SystemKind::HermitianSymmetricSum,
        SystemKind::HermitianSymmetricSumMixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SystemKind::TwoUnknown => "two_unknown",
            SystemKind::ThreeUnknown => "three_unknown",
            SystemKind::ClassicalTriple => "classical_triple",
            SystemKind::HermitianCongruence => "hermitian_congruence",
            SystemKind::HermitianCongruenceMixed => "hermitian_congruence_mixed",
            SystemKind::HermitianSymmetricSum => "hermitian_symmetric_sum",
            SystemKind::HermitianSymmetricSumMixed => "hermitian_symmetric_sum_mixed",
        }
    }

    pub fn is_hermitian(self) -> bool {
        !matches!(
            self,
            SystemKind::TwoUnknown | SystemKind::ThreeUnknown | SystemKind::ClassicalTriple
        )
    }

    /// Rank equalities whose conjunction decides solvability.
    pub fn conditions(self) -> &'static [&'static str] {
        match self {
            SystemKind::TwoUnknown | SystemKind::ClassicalTriple => TWO_UNKNOWN,
            SystemKind::ThreeUnknown => THREE_UNKNOWN,
            SystemKind::HermitianCongruence => HERMITIAN_CONGRUENCE,
            SystemKind::HermitianCongruenceMixed => HERMITIAN_CONGRUENCE_MIXED,
            SystemKind::HermitianSymmetricSum => HERMITIAN_SYMMETRIC_SUM,
            SystemKind::HermitianSymmetricSumMixed => HERMITIAN_SYMMETRIC_SUM_MIXED,
        }
    }

    /// The system as stated.
    pub fn equations(self) -> &'static [EquationSpec] {
        match self {
            SystemKind::TwoUnknown => TWO_EQS,
            SystemKind::ThreeUnknown => THREE_EQS,
            SystemKind::ClassicalTriple => CLASSICAL_EQS,
            SystemKind::HermitianCongruence => CONG_EQS,
            SystemKind::HermitianCongruenceMixed => CONG_MIXED_EQS,
            SystemKind::HermitianSymmetricSum => SYM_EQS,
            SystemKind::HermitianSymmetricSumMixed => SYM_MIXED_EQS,
        }
    }

    /// An unconstrained system that is solvable exactly when the stated one
    /// is, and whose solutions symmetrize into solutions of it.
    pub fn oracle_equations(self) -> &'static [EquationSpec] {
        match self {
            SystemKind::HermitianCongruenceMixed => CONG_MIXED_ORACLE,
            SystemKind::HermitianSymmetricSum => SYM_ORACLE,
            SystemKind::HermitianSymmetricSumMixed => SYM_MIXED_ORACLE,
            other => other.equations(),
        }
    }

    /// Unknowns that must satisfy `U = U*`.
    pub fn hermitian_unknowns(self) -> &'static [&'static str] {
        match self {
            SystemKind::HermitianCongruence | SystemKind::HermitianCongruenceMixed => &["X", "Y"],
            SystemKind::HermitianSymmetricSum | SystemKind::HermitianSymmetricSumMixed => &["X"],
            _ => &[],
        }
    }

    /// Right-hand sides that must be Hermitian.
    pub fn hermitian_rhs(self) -> &'static [&'static str] {
        match self {
            SystemKind::HermitianCongruence | SystemKind::HermitianSymmetricSum => &["Phi", "Psi", "Omega"],
            SystemKind::HermitianCongruenceMixed | SystemKind::HermitianSymmetricSumMixed => &["Phi"],
            _ => &[],
        }
    }

    /// Coefficient matrices with symbolic `(rows, cols)` dimensions.
    pub fn coefficients(self) -> &'static [(&'static str, char, char)] {
        match self {
            SystemKind::TwoUnknown | SystemKind::ThreeUnknown => &[
                ("A", 'm', 'p'),
                ("B", 'm', 'q'),
                ("C", 's', 'p'),
                ("D", 't', 'p'),
                ("E", 'k', 'n'),
                ("F", 'k', 'f'),
                ("G", 'k', 'g'),
                ("H", 'l', 'n'),
            ],
            SystemKind::ClassicalTriple => &[
                ("A", 'm', 'p'),
                ("C", 's', 'p'),
                ("D", 't', 'p'),
                ("E", 'k', 'n'),
                ("F", 'k', 'f'),
                ("G", 'k', 'g'),
            ],
            SystemKind::HermitianCongruence | SystemKind::HermitianSymmetricSum => {
                &[("A", 'm', 'p'), ("B", 'm', 'q'), ("C", 's', 'p'), ("D", 't', 'p')]
            }
            SystemKind::HermitianCongruenceMixed | SystemKind::HermitianSymmetricSumMixed => {
                &[("A", 'm', 'p'), ("B", 'm', 'q'), ("C", 's', 'p'), ("D", 'p', 't')]
            }
        }
    }

    pub fn rhs_names(self) -> Vec<&'static str> {
        self.equations().iter().map(|e| e.rhs).collect()
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SystemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SystemKind> {
        SystemKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown system kind `{s}`")))
    }
}

impl Serialize for SystemKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for SystemKind {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<SystemKind, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

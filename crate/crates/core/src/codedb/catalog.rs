//! Named codes with claimed parameters, served only after verification.

use std::fmt;

use crate::code::{LinearCode, TypeClass};
use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;
use crate::io::parse_matrix;
use crate::search::{ChainWitness, DistanceProfile};
use crate::weights;

use super::constructions::{d_plus, direct_sum_all, extended_qr, reed_muller};

/// Where a matrix comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Tabulated reference matrices.
    Reference,
    /// Small worked examples.
    Example,
    Construction,
    ExternalLiterature,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Reference => "reference",
            Source::Example => "example",
            Source::Construction => "construction",
            Source::ExternalLiterature => "classification",
        })
    }
}

/// Claimed properties; `None` means not claimed.
#[derive(Clone, Debug, Default)]
pub struct Claims {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub type_class: Option<TypeClass>,
    pub self_complementary: Option<bool>,
    pub doubly_even: Option<bool>,
    pub dual_distance: Option<usize>,
    /// Exact set of nonzero weights.
    pub weights: Option<Vec<usize>>,
    /// `(w, A_w)` pairs.
    pub counts: Vec<(usize, u64)>,
    /// Names of entries whose codes are subcodes of this one.
    pub contains: Vec<&'static str>,
    /// Profile realized by the rows of the matrix, in order.
    pub profile: Option<DistanceProfile>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub claimed: Claims,
    pub source: Source,
    /// The generator as stored or built, rows in their original order.
    pub matrix: GF2Matrix,
}

impl CatalogEntry {
    pub fn code(&self) -> LinearCode {
        LinearCode::from_generator(&self.matrix)
    }
}

enum Build {
    Data(&'static str),
    Make(fn() -> Result<LinearCode>),
}

struct Registration {
    name: &'static str,
    source: Source,
    build: Build,
    claims: fn() -> Claims,
}

macro_rules! data {
    ($file:literal) => {
        Build::Data(include_str!(concat!("../../../../data/", $file, ".gen")))
    };
}

fn base(n: usize, k: usize, d: usize) -> Claims {
    Claims {
        n,
        k,
        d: Some(d),
        ..Claims::default()
    }
}

fn type_ii(n: usize, d: usize) -> Claims {
    Claims {
        type_class: Some(TypeClass::TypeII),
        self_complementary: Some(true),
        doubly_even: Some(true),
        ..base(n, n / 2, d)
    }
}

fn profile(s: &str) -> Option<DistanceProfile> {
    Some(s.parse().expect("static profile"))
}

fn n24(a4: u64) -> Claims {
    Claims {
        counts: vec![(4, a4)],
        ..type_ii(24, 4)
    }
}

fn c32(inner: &'static str) -> Claims {
    Claims {
        contains: vec![inner],
        profile: profile("8,8,8,8,8,12,12,12,12,12,16,16,16,16,16,32"),
        ..type_ii(32, 8)
    }
}

fn c28() -> Claims {
    Claims {
        self_complementary: Some(true),
        doubly_even: Some(true),
        weights: Some(vec![12, 16, 28]),
        ..base(28, 7, 12)
    }
}

fn e8() -> Result<LinearCode> {
    Ok(LinearCode::from_generator(&parse_matrix(include_str!("../../../../data/e8.gen"))?))
}

fn d16() -> Result<LinearCode> {
    d_plus(16)
}

const REGISTRY: &[Registration] = &[
    Registration {
        name: "e8",
        source: Source::Example,
        build: data!("e8"),
        claims: || Claims {
            profile: profile("4,4,4,8"),
            counts: vec![(4, 14), (8, 1)],
            ..type_ii(8, 4)
        },
    },
    Registration {
        name: "d16",
        source: Source::Example,
        build: data!("d16"),
        claims: || Claims {
            counts: vec![(4, 28)],
            ..type_ii(16, 4)
        },
    },
    Registration {
        name: "d16_odp",
        source: Source::Example,
        build: data!("d16_odp"),
        claims: || Claims {
            contains: vec!["d16"],
            profile: profile("4,4,4,8,8,8,8,16"),
            ..type_ii(16, 4)
        },
    },
    Registration {
        name: "2e8",
        source: Source::Construction,
        build: Build::Make(|| direct_sum_all(&[e8()?, e8()?])),
        claims: || Claims {
            counts: vec![(4, 28)],
            ..type_ii(16, 4)
        },
    },
    Registration {
        name: "2e8_odp",
        source: Source::Example,
        build: data!("2e8_odp"),
        claims: || Claims {
            contains: vec!["2e8"],
            profile: profile("4,4,4,8,8,8,8,16"),
            ..type_ii(16, 4)
        },
    },
    Registration {
        name: "2d12",
        source: Source::ExternalLiterature,
        build: data!("2d12"),
        claims: || n24(30),
    },
    Registration {
        name: "d10_2e7",
        source: Source::ExternalLiterature,
        build: data!("d10_2e7"),
        claims: || n24(24),
    },
    Registration {
        name: "3d8",
        source: Source::ExternalLiterature,
        build: data!("3d8"),
        claims: || n24(18),
    },
    Registration {
        name: "4d6",
        source: Source::ExternalLiterature,
        build: data!("4d6"),
        claims: || n24(12),
    },
    Registration {
        name: "d24",
        source: Source::Construction,
        build: Build::Make(|| d_plus(24)),
        claims: || n24(66),
    },
    Registration {
        name: "6d4",
        source: Source::ExternalLiterature,
        build: data!("6d4"),
        claims: || n24(6),
    },
    Registration {
        name: "d16_e8",
        source: Source::Construction,
        build: Build::Make(|| direct_sum_all(&[d16()?, e8()?])),
        claims: || n24(42),
    },
    Registration {
        name: "3e8",
        source: Source::Construction,
        build: Build::Make(|| direct_sum_all(&[e8()?, e8()?, e8()?])),
        claims: || n24(42),
    },
    Registration {
        name: "g24",
        source: Source::Construction,
        build: Build::Make(|| extended_qr(23)),
        claims: || Claims {
            counts: vec![(8, 759), (12, 2576)],
            ..type_ii(24, 8)
        },
    },
    Registration {
        name: "g24_odp_dic",
        source: Source::Construction,
        build: data!("g24_odp_dic"),
        claims: || Claims {
            profile: profile("8,8,8,8,8,8,8,12,12,12,16,16"),
            ..type_ii(24, 8)
        },
    },
    Registration {
        name: "g24_odp_inv",
        source: Source::Construction,
        build: data!("g24_odp_inv"),
        claims: || Claims {
            profile: profile("8,8,8,8,8,8,8,8,12,12,12,24"),
            ..type_ii(24, 8)
        },
    },
    Registration {
        name: "r1_4",
        source: Source::Construction,
        build: Build::Make(|| reed_muller(1, 4)),
        claims: || base(16, 5, 8),
    },
    Registration {
        name: "r1_5",
        source: Source::Construction,
        build: Build::Make(|| reed_muller(1, 5)),
        claims: || base(32, 6, 16),
    },
    Registration {
        name: "rc1",
        source: Source::Reference,
        build: data!("rc1"),
        claims: || Claims {
            contains: vec!["r1_5"],
            ..base(32, 11, 12)
        },
    },
    Registration {
        name: "rc2",
        source: Source::Reference,
        build: data!("rc2"),
        claims: || Claims {
            contains: vec!["r1_5"],
            ..base(32, 11, 12)
        },
    },
    Registration {
        name: "c81_1",
        source: Source::Reference,
        build: data!("c81_1"),
        claims: || c32("rc1"),
    },
    Registration {
        name: "c81_2",
        source: Source::Reference,
        build: data!("c81_2"),
        claims: || c32("rc2"),
    },
    Registration {
        name: "c82_1",
        source: Source::Reference,
        build: data!("c82_1"),
        claims: || c32("rc1"),
    },
    Registration {
        name: "c82_2",
        source: Source::Reference,
        build: data!("c82_2"),
        claims: || c32("rc2"),
    },
    Registration {
        name: "c83_1",
        source: Source::Reference,
        build: data!("c83_1"),
        claims: || c32("rc1"),
    },
    Registration {
        name: "c83_2",
        source: Source::Reference,
        build: data!("c83_2"),
        claims: || c32("rc2"),
    },
    Registration {
        name: "c84_1",
        source: Source::Reference,
        build: data!("c84_1"),
        claims: || c32("rc1"),
    },
    Registration {
        name: "c84_2",
        source: Source::Reference,
        build: data!("c84_2"),
        claims: || c32("rc2"),
    },
    Registration {
        name: "c85_1",
        source: Source::Reference,
        build: data!("c85_1"),
        claims: || c32("rc1"),
    },
    Registration {
        name: "c85_2",
        source: Source::Reference,
        build: data!("c85_2"),
        claims: || c32("rc2"),
    },
    Registration {
        name: "g28_4_16",
        source: Source::Example,
        build: data!("g28_4_16"),
        claims: || Claims {
            self_complementary: Some(true),
            doubly_even: Some(true),
            // The name keeps the conventional label; the all-one row brings in
            // the complements of the weight-16 words.
            weights: Some(vec![12, 16, 28]),
            ..base(28, 4, 12)
        },
    },
    Registration {
        name: "c28_7_12_1",
        source: Source::Example,
        build: data!("c28_7_12_1"),
        claims: c28,
    },
    Registration {
        name: "c28_7_12_2",
        source: Source::Example,
        build: data!("c28_7_12_2"),
        claims: c28,
    },
    Registration {
        name: "c28_7_12_3",
        source: Source::Example,
        build: data!("c28_7_12_3"),
        claims: c28,
    },
    Registration {
        name: "c28_7_12_4",
        source: Source::Example,
        build: data!("c28_7_12_4"),
        claims: c28,
    },
    Registration {
        name: "g48_16_16",
        source: Source::Example,
        build: data!("g48_16_16"),
        claims: || Claims {
            self_complementary: Some(true),
            doubly_even: Some(true),
            dual_distance: Some(4),
            ..base(48, 16, 16)
        },
    },
    Registration {
        name: "q48",
        source: Source::Construction,
        build: Build::Make(|| extended_qr(47)),
        claims: || type_ii(48, 12),
    },
    Registration {
        name: "q72",
        source: Source::Construction,
        build: Build::Make(|| extended_qr(71)),
        claims: || Claims {
            d: None,
            ..type_ii(72, 12)
        },
    },
    Registration {
        name: "ex6_3_1",
        source: Source::Example,
        build: data!("ex6_3_1"),
        claims: || base(6, 3, 1),
    },
    Registration {
        name: "ex6_5_1",
        source: Source::Example,
        build: data!("ex6_5_1"),
        claims: || base(6, 5, 1),
    },
];

fn find(name: &str) -> Result<&'static Registration> {
    let key = name.to_ascii_lowercase();
    REGISTRY
        .iter()
        .find(|s| s.name == key)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// Registered names in catalog order.
pub fn catalog_list() -> Vec<&'static str> {
    REGISTRY.iter().map(|s| s.name).collect()
}

/// Loads an entry without verifying it.
pub fn catalog_entry(name: &str) -> Result<CatalogEntry> {
    let reg = find(name)?;
    let matrix = match &reg.build {
        Build::Data(text) => parse_matrix(text)?,
        Build::Make(f) => f()?.generator().clone(),
    };
    Ok(CatalogEntry {
        name: reg.name.to_string(),
        claimed: (reg.claims)(),
        source: reg.source,
        matrix,
    })
}

/// Loads an entry; entries taken from external classifications are
/// verified first and refused if any claim fails.
pub fn catalog_get(name: &str) -> Result<CatalogEntry> {
    let e = catalog_entry(name)?;
    if e.source == Source::ExternalLiterature {
        let report = verify_entry(&e);
        if !report.passed() {
            return Err(Error::Precondition(format!("entry {name} failed verification:\n{report}")));
        }
    }
    Ok(e)
}

/// The code of a registered entry.
pub fn catalog_code(name: &str) -> Result<LinearCode> {
    Ok(catalog_get(name)?.code())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub claim: String,
    pub expected: String,
    pub found: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, claim: &str, expected: impl fmt::Display, found: Result<String>) {
        let (found, pass) = match found {
            Ok(f) => {
                let pass = f == expected.to_string();
                (f, pass)
            }
            Err(e) => (format!("error: {e}"), false),
        };
        self.checks.push(Check {
            claim: claim.to_string(),
            expected: expected.to_string(),
            found,
            pass,
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {}: {} (claimed {}, found {})",
                if c.pass { "pass" } else { "FAIL" },
                self.name,
                c.claim,
                c.expected,
                c.found
            )?;
        }
        Ok(())
    }
}

/// Recomputes every claimed property of the entry.
pub fn verify_entry(e: &CatalogEntry) -> VerificationReport {
    let mut r = VerificationReport {
        name: e.name.clone(),
        checks: Vec::new(),
    };
    let c = e.code();
    let cl = &e.claimed;
    r.push("length", cl.n, Ok(c.n().to_string()));
    r.push("dimension", cl.k, Ok(c.k().to_string()));
    r.push("rows independent", true, Ok((e.matrix.rank() == e.matrix.nrows()).to_string()));
    if let Some(d) = cl.d {
        r.push("minimum distance", d, weights::min_distance(&c).map(|x| x.to_string()));
    }
    if let Some(t) = cl.type_class {
        r.push("type", t, Ok(c.type_classify().to_string()));
    }
    if let Some(s) = cl.self_complementary {
        r.push("self-complementary", s, Ok(c.is_self_complementary().to_string()));
    }
    if let Some(de) = cl.doubly_even {
        r.push(
            "doubly-even",
            de,
            Ok((c.is_self_orthogonal() && c.is_doubly_even()).to_string()),
        );
    }
    if let Some(dd) = cl.dual_distance {
        r.push("dual distance", dd, weights::min_distance(&c.dual()).map(|x| x.to_string()));
    }
    if let Some(ws) = &cl.weights {
        r.push(
            "nonzero weights",
            format!("{ws:?}"),
            weights::weight_distribution(&c).map(|wd| format!("{:?}", wd.nonzero_weights())),
        );
    }
    for &(w, a) in &cl.counts {
        r.push(
            &format!("A_{w}"),
            a,
            weights::weight_distribution(&c).map(|wd| wd.get(w).to_string()),
        );
    }
    for inner in &cl.contains {
        let found = catalog_entry(inner).map(|x| c.contains_code(&x.code()).to_string());
        r.push(&format!("contains {inner}"), true, found);
    }
    if let Some(p) = &cl.profile {
        let w = ChainWitness {
            matrix: e.matrix.clone(),
        };
        r.push("row-order profile", p, w.profile().map(|x| x.to_string()));
    }
    r
}

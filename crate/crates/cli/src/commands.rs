use std::path::Path;

use kn_frieze::construct::{
    default_anchor, evaluate_random_path, extend_cross_section, frieze_from_cluster_capped, frieze_from_matrix,
    matrix_from_sl_frieze, to_sl_frieze,
};
use kn_frieze::frieze::{check_diamonds, validate_frieze_with, Checks, DiamondViolation, FriezePattern, ValidationReport};
use kn_frieze::io::{
    render_cross_section, render_text, render_tikz, ClusterDocument, Document, FriezeDocument, MatrixDocument,
    SlkDocument,
};
use kn_frieze::plucker::RelationViolation;
use kn_frieze::rat::format_rat;
use kn_frieze::separation::{enumerate_clusters, is_weakly_separated};
use kn_frieze::{Shape, Subset};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::{emit, read, stdout, Failure, Format, Target};

fn parse(path: &Path) -> Result<Document, Failure> {
    Ok(Document::parse(&read(path)?)?)
}

fn print_report(report: &Value) {
    stdout(&(serde_json::to_string_pretty(report).expect("report serializes") + "\n"));
}

pub fn enumerate(k: usize, n: usize, out: Option<&Path>, cap: usize) -> Result<(), Failure> {
    let shape = Shape::new(k, n)?;
    let clusters = enumerate_clusters(shape, cap)?;
    stdout(&format!("{}\n", clusters.len()));
    if let Some(path) = out {
        let docs = clusters.iter().map(ClusterDocument::from_collection).collect();
        emit(Some(path), &Document::Clusters(docs).to_json())?;
    }
    Ok(())
}

pub fn build(cluster: &Path, out: Option<&Path>, seed: Option<u64>, cap: usize) -> Result<(), Failure> {
    let mut doc = match parse(cluster)? {
        Document::Cluster(doc) => doc,
        _ => return Err(Failure::input("expected a cluster document")),
    };
    // a cluster handed to build must be maximal whatever the flag says
    doc.maximal = true;
    let c = doc.to_collection()?;
    let pattern = frieze_from_cluster_capped(&c, cap)?;
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (s, v) in pattern.iter() {
            let (other, _) = evaluate_random_path(&c, s, 2 * c.len(), &mut rng)?;
            if &other != v {
                return Err(Failure::construction(format!("p{s}: {v} by propagation, {other} along a random path")));
            }
        }
    }
    let ones = pattern.ones();
    eprintln!(
        "built {} frieze: {} values, {} equal to 1{}",
        c.shape(),
        pattern.values().len(),
        ones.len(),
        if ones == c.members() { "" } else { " (1-set differs from the cluster)" }
    );
    emit(out, &Document::Frieze(FriezeDocument::from_pattern(&pattern)).to_json())
}

fn subset_json(s: Subset) -> Value {
    json!(s.to_vec())
}

fn diamond_json(v: &DiamondViolation) -> Value {
    let d = &v.diamond;
    json!({
        "check": "diamond", "x": d.x, "i": d.i, "j": d.j, "l": d.l, "m": d.m,
        "lhs": format_rat(&v.lhs), "rhs": format_rat(&v.rhs),
    })
}

fn frieze_report(p: &FriezePattern, r: &ValidationReport) -> Value {
    let mut violations = Vec::new();
    for (s, v) in &r.intervals {
        violations.push(json!({"check": "interval", "subset": subset_json(*s), "value": format_rat(v)}));
    }
    for s in &r.negative {
        violations.push(json!({"check": "negative", "subset": subset_json(*s), "value": format_rat(p.get(*s))}));
    }
    for s in &r.non_integral {
        violations.push(json!({"check": "integral", "subset": subset_json(*s), "value": format_rat(p.get(*s))}));
    }
    for v in &r.relations {
        violations.push(match v {
            RelationViolation::ThreeTerm { relation, lhs, rhs } => json!({
                "check": "three-term", "relation": relation.to_string(),
                "lhs": format_rat(lhs), "rhs": format_rat(rhs),
            }),
            RelationViolation::GrassmannPlucker { relation, residual } => json!({
                "check": "grassmann-plucker", "head": relation.head, "tail": relation.tail,
                "residual": format_rat(residual),
            }),
        });
    }
    violations.extend(r.diamonds.iter().flatten().map(diamond_json));
    let warnings: Vec<Value> =
        r.zero_warnings.iter().map(|s| json!({"check": "zero", "subset": subset_json(*s)})).collect();
    json!({
        "kind": "frieze", "k": p.k(), "n": p.n(), "valid": r.is_valid(),
        "violations": violations, "warnings": warnings,
    })
}

fn cluster_report(doc: &ClusterDocument) -> Result<Value, Failure> {
    let shape = Shape::new(doc.k, doc.n)?;
    let mut members = Vec::new();
    for m in &doc.members {
        members.push(shape.subset(m)?);
    }
    let mut crossings = Vec::new();
    for (x, &a) in members.iter().enumerate() {
        for &b in &members[x + 1..] {
            if !is_weakly_separated(a, b, shape.n()) {
                crossings.push(json!([a.to_vec(), b.to_vec()]));
            }
        }
    }
    let collection = kn_frieze::WsCollection::new(shape, members.iter().copied());
    let maximal = collection.as_ref().is_ok_and(|c| c.is_maximal());
    let valid = crossings.is_empty() && (maximal || !doc.maximal);
    Ok(json!({
        "kind": "cluster", "k": doc.k, "n": doc.n, "valid": valid, "size": members.len(),
        "required": shape.cluster_size(), "maximal": maximal, "crossings": crossings,
    }))
}

pub fn validate(file: &Path, gp: bool, diamonds: bool) -> Result<(), Failure> {
    let checks = Checks { grassmann_plucker: gp, diamonds };
    let report = match parse(file)? {
        Document::Frieze(doc) => {
            let missing = doc.missing()?;
            if !missing.is_empty() {
                let names: Vec<String> = missing.iter().map(|s| format!("p{s}")).collect();
                return Err(Failure::input(format!("missing values for {}", names.join(", "))));
            }
            let p = doc.to_pattern()?;
            frieze_report(&p, &validate_frieze_with(&p, checks))
        }
        Document::CrossSection(doc) => {
            let s = doc.to_section()?;
            let found: Vec<Value> = check_diamonds(&s).iter().map(diamond_json).collect();
            json!({
                "kind": "cross-section", "n": s.n(), "x": s.x(), "valid": found.is_empty(),
                "violations": found,
            })
        }
        Document::CoxeterArray(doc) => {
            let array = doc.to_array()?;
            let mut violations: Vec<Value> = array
                .unimodular_violations()
                .iter()
                .map(|v| json!({"check": "unimodular", "row": v.row, "column": v.column, "determinant": format_rat(&v.determinant)}))
                .collect();
            match array.to_pattern() {
                Ok(p) => {
                    let inner = frieze_report(&p, &validate_frieze_with(&p, checks));
                    violations.extend(inner["violations"].as_array().cloned().unwrap_or_default());
                }
                Err(e) => violations.push(json!({"check": "symmetry", "message": e.to_string()})),
            }
            json!({"kind": "array", "n": array.n(), "valid": violations.is_empty(), "violations": violations})
        }
        Document::Slk(doc) => {
            let f = doc.to_frieze()?;
            let bad: Vec<Value> = f
                .window_violations()
                .iter()
                .map(|w| json!({"check": "window", "column": w.column, "offset": w.offset, "determinant": format_rat(&w.determinant)}))
                .collect();
            json!({"kind": "slk", "k": f.k(), "n": f.n(), "valid": bad.is_empty(), "violations": bad})
        }
        Document::Matrix(doc) => {
            let (p, r) = frieze_from_matrix(&doc.to_matrix()?)?;
            let mut report = frieze_report(&p, &r);
            report["kind"] = json!("matrix");
            report
        }
        Document::Cluster(doc) => cluster_report(&doc)?,
        Document::Clusters(docs) => {
            let reports = docs.iter().map(cluster_report).collect::<Result<Vec<_>, _>>()?;
            let valid = reports.iter().all(|r| r["valid"] == json!(true));
            json!({"kind": "clusters", "valid": valid, "clusters": reports})
        }
    };
    print_report(&report);
    if report["valid"] == json!(true) {
        Ok(())
    } else {
        Err(Failure::invalid())
    }
}

pub fn convert(file: &Path, to: Target, out: Option<&Path>, anchor: Option<usize>) -> Result<(), Failure> {
    let doc = parse(file)?;
    let matrix_of = |p: &FriezePattern| -> Result<Document, Failure> {
        let f = to_sl_frieze(p);
        let a = anchor.unwrap_or_else(|| default_anchor(f.k(), f.n()));
        Ok(Document::Matrix(MatrixDocument::from_matrix(&matrix_from_sl_frieze(&f, a)?)))
    };
    let from_matrix = |m: &[Vec<kn_frieze::Rat>]| -> Result<Document, Failure> {
        let (p, report) = frieze_from_matrix(m)?;
        if !report.is_valid() {
            eprintln!("frieze: warning: the minors do not form a valid frieze");
            eprint!("{report}");
        }
        Ok(Document::Frieze(FriezeDocument::from_pattern(&p)))
    };
    let result = match (doc, to) {
        (Document::Frieze(d), Target::Slk) => Document::Slk(SlkDocument::from_frieze(&to_sl_frieze(&d.to_pattern()?))),
        (Document::Frieze(d), Target::Matrix) => matrix_of(&d.to_pattern()?)?,
        (Document::Matrix(d), Target::Frieze) => from_matrix(&d.to_matrix()?)?,
        (Document::Slk(d), Target::Matrix | Target::Frieze) => {
            let f = d.to_frieze()?;
            let a = anchor.unwrap_or_else(|| default_anchor(f.k(), f.n()));
            let m = matrix_from_sl_frieze(&f, a)?;
            if to == Target::Matrix {
                Document::Matrix(MatrixDocument::from_matrix(&m))
            } else {
                from_matrix(&m)?
            }
        }
        (Document::CrossSection(d), Target::Frieze) => {
            Document::Frieze(FriezeDocument::from_pattern(&extend_cross_section(&d.to_section()?)?))
        }
        (Document::CoxeterArray(d), Target::Frieze) => {
            Document::Frieze(FriezeDocument::from_pattern(&d.to_array()?.to_pattern()?))
        }
        (_, to) => return Err(Failure::input(format!("this document cannot be converted to {to:?}"))),
    };
    emit(out, &result.to_json())
}

pub fn render(file: &Path, format: Format, section: Option<usize>, out: Option<&Path>) -> Result<(), Failure> {
    let pattern = match parse(file)? {
        Document::Frieze(d) => d.to_pattern()?,
        Document::CoxeterArray(d) => d.to_array()?.to_pattern()?,
        Document::CrossSection(d) => {
            let s = d.to_section()?;
            if format == Format::Tikz {
                return Err(kn_frieze::FriezeError::Unsupported("TikZ output of a lone cross-section".into()).into());
            }
            return emit(out, &render_cross_section(&s));
        }
        _ => return Err(Failure::input("expected a frieze document")),
    };
    if pattern.k() > 3 {
        return Err(kn_frieze::FriezeError::Unsupported(format!("rendering for k = {}", pattern.k())).into());
    }
    let text = match format {
        Format::Text => render_text(&pattern, section)?,
        Format::Tikz => {
            if section.is_some() {
                return Err(Failure::input("--cross-section applies to text output"));
            }
            render_tikz(&pattern)?
        }
    };
    emit(out, &text)
}

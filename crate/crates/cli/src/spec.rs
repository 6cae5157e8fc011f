//! Algebra spec strings such as `rook:2`, `brandt:2,2:3` or
//! `product:b21,group:2`.

use std::fs;

use workbench::checker::Algebra;
use workbench::families::{
    adjoin_identity, b2, b21, brandt_semigroup, direct_product, kadourek_semigroup, rook_monoid,
    rook_monoid_restricted_3, sigma7, AbelianGroupSpec,
};
use workbench::order::make_nat_semiring;
use workbench::{AiSemiring, Error, FiniteSemigroup, Result};

#[derive(Debug, Clone)]
pub enum Built {
    Semigroup(FiniteSemigroup),
    Semiring(AiSemiring),
}

impl Built {
    pub fn size(&self) -> usize {
        match self {
            Built::Semigroup(s) => s.size(),
            Built::Semiring(a) => a.size(),
        }
    }

    /// The multiplicative semigroup, with inverses when they exist.
    pub fn semigroup(&self) -> FiniteSemigroup {
        match self {
            Built::Semigroup(s) => s.clone(),
            Built::Semiring(a) => with_inverses_if_any(a.multiplicative()),
        }
    }

    pub fn as_algebra(&self) -> Algebra<'_> {
        match self {
            Built::Semigroup(s) => s.into(),
            Built::Semiring(a) => a.into(),
        }
    }

    /// Semiring view for terms with `+`: a semiring as is, an inverse
    /// semigroup through its natural-order infimum.
    pub fn with_addition(self) -> Result<Built> {
        match self {
            Built::Semigroup(s) => Ok(Built::Semiring(make_nat_semiring(&s)?)),
            semiring => Ok(semiring),
        }
    }

    /// Text form: the Cayley-table format, or the semiring format.
    pub fn to_text(&self) -> String {
        match self {
            Built::Semigroup(s) => s.to_string(),
            Built::Semiring(a) => a.to_string(),
        }
    }

    /// `size=<n> inverse=<yes|no> zero=<yes|no> identity=<yes|no>`
    pub fn summary(&self) -> String {
        let s = self.semigroup();
        let yn = |b: bool| if b { "yes" } else { "no" };
        format!(
            "size={} inverse={} zero={} identity={}",
            s.size(),
            yn(s.is_inverse()),
            yn(s.zero().is_some()),
            yn(s.identity().is_some())
        )
    }
}

fn with_inverses_if_any(s: FiniteSemigroup) -> FiniteSemigroup {
    if s.is_inverse() {
        return s;
    }
    s.clone().into_inverse().unwrap_or(s)
}

fn bad(spec: &str, why: &str) -> Error {
    Error::BadSpec(format!("{}: {}", spec, why))
}

fn number<T: std::str::FromStr>(spec: &str, s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| bad(spec, &format!("`{}` is not a number", s)))
}

fn group(spec: &str, orders: &str) -> Result<AbelianGroupSpec> {
    let orders = orders
        .split(',')
        .map(|o| number::<u32>(spec, o))
        .collect::<Result<Vec<_>>>()?;
    AbelianGroupSpec::new(orders)
}

fn semigroup_only(spec: &str) -> Result<FiniteSemigroup> {
    match parse_spec(spec)? {
        Built::Semigroup(s) => Ok(s),
        Built::Semiring(_) => Err(bad(spec, "expected a semigroup, found a semiring")),
    }
}

/// Builds the algebra named by `spec`.
pub fn parse_spec(spec: &str) -> Result<Built> {
    let spec = spec.trim();
    let (head, rest) = match spec.split_once(':') {
        Some((h, r)) => (h, Some(r)),
        None => (spec, None),
    };
    let sg = |s: FiniteSemigroup| Ok(Built::Semigroup(s));
    match (head, rest) {
        ("b2", None) => sg(b2().semigroup),
        ("b21", None) => sg(b21().semigroup),
        ("rook3-restricted", None) => sg(rook_monoid_restricted_3()?.semigroup),
        ("rook", Some(t)) => sg(rook_monoid(number(spec, t)?)?),
        ("sigma7", None) => sg(sigma7()?.closure.semigroup),
        ("sigma7", Some("bool")) => Ok(Built::Semiring(sigma7()?.boolean)),
        ("sigma7", Some("nat")) => Ok(Built::Semiring(sigma7()?.natural)),
        ("group", Some(orders)) => sg(group(spec, orders)?.to_semigroup()),
        ("brandt", Some(r)) => {
            let (orders, i) = r
                .rsplit_once(':')
                .ok_or_else(|| bad(spec, "expected brandt:<orders>:<i>"))?;
            sg(brandt_semigroup(&group(spec, orders)?, number(spec, i)?)?.semigroup)
        }
        ("kadourek", Some(r)) => {
            let (n, h) = r
                .split_once(':')
                .ok_or_else(|| bad(spec, "expected kadourek:<n>:<h>"))?;
            sg(kadourek_semigroup(number(spec, n)?, number(spec, h)?)?.semigroup)
        }
        ("adjoin1", Some(inner)) => sg(adjoin_identity(&semigroup_only(inner)?)),
        ("product", Some(r)) => {
            // first comma at which both halves are valid specs
            for (pos, _) in r.match_indices(',') {
                let (a, b) = (&r[..pos], &r[pos + 1..]);
                if let (Ok(a), Ok(b)) = (semigroup_only(a), semigroup_only(b)) {
                    return sg(direct_product(&a, &b));
                }
            }
            Err(bad(spec, "expected product:<a>,<b>"))
        }
        ("file", Some(path)) => load(path),
        _ => Err(bad(spec, "unknown algebra")),
    }
}

/// Reads the Cayley-table format, or the semiring format when the file
/// contains a `---` separator line.
pub fn load(path: &str) -> Result<Built> {
    let text = fs::read_to_string(path).map_err(|e| bad(path, &e.to_string()))?;
    if text.lines().any(|l| l.trim() == "---") {
        Ok(Built::Semiring(text.parse()?))
    } else {
        Ok(Built::Semigroup(with_inverses_if_any(text.parse()?)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        for (spec, size) in [
            ("rook:2", 7),
            ("b21", 6),
            ("b2", 5),
            ("sigma7", 7),
            ("sigma7:bool", 7),
            ("sigma7:nat", 7),
            ("rook3-restricted", 31),
            ("brandt:2,2:3", 37),
            ("brandt:1:2", 5),
            ("group:2,3", 6),
            ("kadourek:2:1", 34),
            ("adjoin1:b2", 6),
            ("product:group:2,brandt:2:2", 18),
            ("product:brandt:2,2:1,b21", 30),
        ] {
            assert_eq!(parse_spec(spec).unwrap().size(), size, "{}", spec);
        }
    }

    #[test]
    fn rejects_unknown() {
        for spec in [
            "rook",
            "rook:x",
            "brandt:2",
            "nothing",
            "product:b21",
            "adjoin1:sigma7:nat",
        ] {
            assert!(
                matches!(parse_spec(spec), Err(Error::BadSpec(_))),
                "{}",
                spec
            );
        }
    }

    #[test]
    fn summary_flags() {
        assert_eq!(
            parse_spec("b21").unwrap().summary(),
            "size=6 inverse=yes zero=yes identity=yes"
        );
        assert_eq!(
            parse_spec("b2").unwrap().summary(),
            "size=5 inverse=yes zero=yes identity=no"
        );
    }
}

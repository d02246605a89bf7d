//! Method signatures as graph vertices.
//!
//! A vertex is identified by its canonical signature string
//! `package.Class#method(T1, T2)`. Two [`MethodRef`]s are equal exactly when
//! their canonical strings are equal; the original spelling is kept in
//! [`MethodRef::raw`] for diagnostics only.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("signature `{0}` has no `#` separating class and method")]
    MissingHash(String),
    #[error("signature `{0}` has an empty class name")]
    EmptyClass(String),
    #[error("signature `{0}` has an empty method name")]
    EmptyMethod(String),
    #[error("signature `{0}` has no parameter list")]
    MissingParams(String),
    #[error("signature `{0}` has unbalanced brackets")]
    Unbalanced(String),
    #[error("signature `{0}` has an empty parameter type")]
    EmptyParam(String),
}

#[derive(Debug, Clone)]
pub struct MethodRef {
    package: String,
    class: String,
    method: String,
    params: Vec<String>,
    raw: String,
    canonical: String,
}

impl MethodRef {
    /// Parses a signature such as `a.b.C#f(int, List<String>)`.
    ///
    /// The string is split on the last `#`. Everything before the last `.`
    /// of the left side is the package; parameters are split on commas that
    /// are not nested inside `<>`, `()` or `[]`.
    pub fn parse(raw: &str) -> Result<Self, SignatureError> {
        let err = |f: fn(String) -> SignatureError| f(raw.to_string());
        let trimmed = raw.trim();
        let (class_path, member) = trimmed.rsplit_once('#').ok_or_else(|| err(SignatureError::MissingHash))?;
        let class_path = class_path.trim();
        let (package, class) = match class_path.rsplit_once('.') {
            Some((pkg, cls)) => (pkg.trim(), cls.trim()),
            None => ("", class_path),
        };
        let bad_package = !package.is_empty() && package.split('.').any(|s| s.trim().is_empty());
        if class.is_empty() || bad_package {
            return Err(err(SignatureError::EmptyClass));
        }

        let open = member.find('(').ok_or_else(|| err(SignatureError::MissingParams))?;
        let method = member[..open].trim();
        if method.is_empty() {
            return Err(err(SignatureError::EmptyMethod));
        }
        let rest = member[open..].trim_end();
        if !rest.ends_with(')') {
            return Err(err(SignatureError::Unbalanced));
        }
        let params = split_params(&rest[1..rest.len() - 1]).ok_or_else(|| err(SignatureError::Unbalanced))?;
        if params.iter().any(String::is_empty) {
            return Err(err(SignatureError::EmptyParam));
        }

        let package: String = package.split('.').map(str::trim).collect::<Vec<_>>().join(".");
        Ok(Self::from_parts_unchecked(package, class.to_string(), method.to_string(), params, raw.to_string()))
    }

    /// Builds a signature from its components. Component strings are used
    /// as given; `method` must be non-empty.
    pub fn new(
        package: impl Into<String>,
        class: impl Into<String>,
        method: impl Into<String>,
        params: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Self, SignatureError> {
        let package = package.into();
        let class = class.into();
        let method = method.into();
        let params: Vec<String> = params.into_iter().map(|p| normalize_param(&p.into())).collect();
        let canonical = render(&package, &class, &method, &params);
        if class.is_empty() {
            return Err(SignatureError::EmptyClass(canonical));
        }
        if method.is_empty() {
            return Err(SignatureError::EmptyMethod(canonical));
        }
        if params.iter().any(String::is_empty) {
            return Err(SignatureError::EmptyParam(canonical));
        }
        Ok(Self::from_parts_unchecked(package, class, method, params, canonical))
    }

    fn from_parts_unchecked(package: String, class: String, method: String, params: Vec<String>, raw: String) -> Self {
        let canonical = render(&package, &class, &method, &params);
        Self { package, class, method, params, raw, canonical }
    }

    pub fn package(&self) -> &str {
        &self.package
    }

    /// Class path below the package, possibly nested (`Outer$Inner`).
    pub fn class(&self) -> &str {
        &self.class
    }

    pub fn method(&self) -> &str {
        &self.method
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// The string this signature was parsed from.
    pub fn raw(&self) -> &str {
        &self.raw
    }

    pub fn canonical(&self) -> &str {
        &self.canonical
    }

    /// Innermost class name, after `$` or `.` nesting.
    pub fn class_simple_name(&self) -> &str {
        self.class.rsplit(['$', '.']).next().unwrap_or(&self.class)
    }

    pub fn package_segments(&self) -> impl Iterator<Item = &str> {
        self.package.split('.').filter(|s| !s.is_empty())
    }

    pub fn is_constructor(&self) -> bool {
        self.method == "<init>" || self.method == self.class_simple_name()
    }
}

fn render(package: &str, class: &str, method: &str, params: &[String]) -> String {
    let mut out = String::with_capacity(package.len() + class.len() + method.len() + 8);
    if !package.is_empty() {
        out.push_str(package);
        out.push('.');
    }
    out.push_str(class);
    out.push('#');
    out.push_str(method);
    out.push('(');
    for (i, p) in params.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(p);
    }
    out.push(')');
    out
}

/// Splits a parameter list on top-level commas. Returns `None` when the
/// brackets do not balance.
fn split_params(list: &str) -> Option<Vec<String>> {
    let mut params = Vec::new();
    if list.trim().is_empty() {
        return Some(params);
    }
    let mut depth: usize = 0;
    let mut start = 0;
    for (i, c) in list.char_indices() {
        match c {
            '<' | '(' | '[' => depth += 1,
            '>' | ')' | ']' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => {
                params.push(normalize_param(&list[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    params.push(normalize_param(&list[start..]));
    Some(params)
}

/// Trims a parameter type and collapses inner whitespace runs to one space.
fn normalize_param(p: &str) -> String {
    p.split_whitespace().collect::<Vec<_>>().join(" ")
}

impl PartialEq for MethodRef {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for MethodRef {}

impl Hash for MethodRef {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical.hash(state);
    }
}

impl PartialOrd for MethodRef {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MethodRef {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical.cmp(&other.canonical)
    }
}

impl fmt::Display for MethodRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical)
    }
}

impl core::str::FromStr for MethodRef {
    type Err = SignatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for MethodRef {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.canonical)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for MethodRef {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        Self::parse(&raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parses_label_example() {
        let m = MethodRef::parse("util.Foo#m()").unwrap();
        assert_eq!(m.package(), "util");
        assert_eq!(m.class(), "Foo");
        assert_eq!(m.method(), "m");
        assert!(m.params().is_empty());
        assert_eq!(m.canonical(), "util.Foo#m()");
    }

    #[test]
    fn generic_commas_are_not_split() {
        let m = MethodRef::parse("a.b.C#f(int, List<String>)").unwrap();
        assert_eq!(m.package(), "a.b");
        assert_eq!(m.class(), "C");
        assert_eq!(m.params(), &["int".to_string(), "List<String>".to_string()]);

        let m = MethodRef::parse("a.C#g(Map<String, List<Integer>>,int[] , Function<A,B>)").unwrap();
        assert_eq!(m.params(), &["Map<String, List<Integer>>", "int[]", "Function<A,B>"]);
        assert_eq!(m.canonical(), "a.C#g(Map<String, List<Integer>>, int[], Function<A,B>)");
    }

    #[test]
    fn missing_hash_is_an_error() {
        assert_eq!(MethodRef::parse("NoHash"), Err(SignatureError::MissingHash("NoHash".into())));
    }

    #[test]
    fn malformed_signatures() {
        assert!(matches!(MethodRef::parse("a.C#f(int"), Err(SignatureError::Unbalanced(_))));
        assert!(matches!(MethodRef::parse("a.C#f(List<int)"), Err(SignatureError::Unbalanced(_))));
        assert!(matches!(MethodRef::parse("a.C#f(int))"), Err(SignatureError::Unbalanced(_))));
        assert!(matches!(MethodRef::parse("a.C#f"), Err(SignatureError::MissingParams(_))));
        assert!(matches!(MethodRef::parse("a.C#(int)"), Err(SignatureError::EmptyMethod(_))));
        assert!(matches!(MethodRef::parse("a.#f()"), Err(SignatureError::EmptyClass(_))));
        assert!(matches!(MethodRef::parse("a..C#f()"), Err(SignatureError::EmptyClass(_))));
        assert!(matches!(MethodRef::parse("a.C#f(int,)"), Err(SignatureError::EmptyParam(_))));
    }

    #[test]
    fn default_package_and_nesting() {
        let m = MethodRef::parse("Foo#m()").unwrap();
        assert_eq!(m.package(), "");
        assert_eq!(m.canonical(), "Foo#m()");

        let m = MethodRef::parse("a.b.Outer$Inner#Inner(int)").unwrap();
        assert_eq!(m.class(), "Outer$Inner");
        assert_eq!(m.class_simple_name(), "Inner");
        assert!(m.is_constructor());
        assert!(MethodRef::parse("a.Foo#<init>()").unwrap().is_constructor());
        assert!(!MethodRef::parse("a.Foo#foo()").unwrap().is_constructor());
    }

    #[test]
    fn whitespace_does_not_change_identity() {
        let a = MethodRef::parse("  a.b.C # f ( int ,  String ) ").unwrap();
        let b = MethodRef::parse("a.b.C#f(int, String)").unwrap();
        assert_eq!(a, b);
        assert_ne!(a.raw(), b.raw());
    }

    #[test]
    fn overloads_are_distinct() {
        let a = MethodRef::parse("a.C#f(List<String>)").unwrap();
        let b = MethodRef::parse("a.C#f(List<Integer>)").unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn new_matches_parse() {
        let built = MethodRef::new("a.b", "C", "f", vec!["int", "List<String>"]).unwrap();
        assert_eq!(built, MethodRef::parse("a.b.C#f(int, List<String>)").unwrap());
        assert!(MethodRef::new("a", "C", "", Vec::<String>::new()).is_err());
    }
}

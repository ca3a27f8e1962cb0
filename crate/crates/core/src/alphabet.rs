//! Atomic propositions, events and their interpretation.
//!
//! An [`Event`] is stored as a bitmask over the declared propositions. In
//! valuation mode the events are all nonempty subsets of the propositions
//! and a proposition holds on an event when its bit is set. In raw-symbol
//! mode every proposition is itself an event (a singleton mask), so the
//! same bit test decides `⟨⟨p⟩⟩ = {p}`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Index of an atomic proposition in an [`Interpretation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Prop(pub u8);

/// An event, as the set of propositions it satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Event(pub u32);

impl Event {
    pub fn satisfies(self, p: Prop) -> bool {
        self.0 & (1 << p.0) != 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Mode {
    /// Events are nonempty sets of propositions.
    Valuation,
    /// Events are the proposition names themselves.
    RawSymbol,
}

/// Valuation mode enumerates `2^n - 1` events.
pub const MAX_VALUATION_PROPS: usize = 12;
pub const MAX_RAW_PROPS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlphabetError {
    #[error("no atomic propositions declared")]
    Empty,
    #[error("too many atomic propositions ({count}, at most {max} in this mode)")]
    TooMany { count: usize, max: usize },
    #[error("duplicate atomic proposition `{0}`")]
    Duplicate(String),
    #[error("invalid atomic proposition name `{0}`")]
    InvalidName(String),
    #[error("unknown atomic proposition `{0}`")]
    UnknownProposition(String),
    #[error("malformed event `{0}`")]
    MalformedEvent(String),
    #[error("event is not in the alphabet")]
    UnknownEvent,
}

/// The finite set of atomic propositions together with the way they are
/// interpreted over events.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Interpretation {
    props: Vec<String>,
    mode: Mode,
}

/// `[a-z][a-zA-Z0-9_]*`, excluding the keywords of both term grammars.
pub fn is_prop_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return false;
    }
    !matches!(name, "true" | "false" | "top" | "bot" | "nu" | "o")
}

impl Interpretation {
    pub fn new<S: AsRef<str>>(props: &[S], mode: Mode) -> Result<Self, AlphabetError> {
        if props.is_empty() {
            return Err(AlphabetError::Empty);
        }
        let max = match mode {
            Mode::Valuation => MAX_VALUATION_PROPS,
            Mode::RawSymbol => MAX_RAW_PROPS,
        };
        if props.len() > max {
            return Err(AlphabetError::TooMany { count: props.len(), max });
        }
        let mut names: Vec<String> = Vec::with_capacity(props.len());
        for p in props {
            let p = p.as_ref();
            if !is_prop_name(p) {
                return Err(AlphabetError::InvalidName(p.to_string()));
            }
            if names.iter().any(|n| n == p) {
                return Err(AlphabetError::Duplicate(p.to_string()));
            }
            names.push(p.to_string());
        }
        Ok(Interpretation { props: names, mode })
    }

    pub fn valuation<S: AsRef<str>>(props: &[S]) -> Result<Self, AlphabetError> {
        Self::new(props, Mode::Valuation)
    }

    pub fn raw<S: AsRef<str>>(props: &[S]) -> Result<Self, AlphabetError> {
        Self::new(props, Mode::RawSymbol)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn num_props(&self) -> usize {
        self.props.len()
    }

    pub fn prop(&self, name: &str) -> Option<Prop> {
        self.props.iter().position(|p| p == name).map(|i| Prop(i as u8))
    }

    pub fn prop_name(&self, p: Prop) -> &str {
        &self.props[p.0 as usize]
    }

    /// Number of events in the alphabet.
    pub fn num_events(&self) -> usize {
        match self.mode {
            Mode::Valuation => (1usize << self.props.len()) - 1,
            Mode::RawSymbol => self.props.len(),
        }
    }

    /// The `i`-th event in declared-alphabet order.
    ///
    /// Valuation events are ordered by bitmask value, raw events by
    /// declaration order.
    pub fn event(&self, index: usize) -> Event {
        debug_assert!(index < self.num_events());
        match self.mode {
            Mode::Valuation => Event(index as u32 + 1),
            Mode::RawSymbol => Event(1 << index),
        }
    }

    /// Position of `e` in the alphabet, or `None` if `e` is not an event of
    /// this interpretation.
    pub fn event_index(&self, e: Event) -> Option<usize> {
        let all = if self.props.len() == 32 { u32::MAX } else { (1u32 << self.props.len()) - 1 };
        if e.0 == 0 || e.0 & !all != 0 {
            return None;
        }
        match self.mode {
            Mode::Valuation => Some(e.0 as usize - 1),
            Mode::RawSymbol if e.0.is_power_of_two() => Some(e.0.trailing_zeros() as usize),
            Mode::RawSymbol => None,
        }
    }

    pub fn events(&self) -> impl Iterator<Item = Event> + '_ {
        (0..self.num_events()).map(move |i| self.event(i))
    }

    /// `e ∈ ⟨⟨p⟩⟩`.
    pub fn holds(&self, p: Prop, e: Event) -> bool {
        e.satisfies(p)
    }

    /// Parses an event: `{a,b}` in valuation mode, a bare name `a` in
    /// raw-symbol mode. A bare name is also accepted in valuation mode as
    /// the singleton valuation.
    pub fn parse_event(&self, text: &str) -> Result<Event, AlphabetError> {
        let text = text.trim();
        let malformed = || AlphabetError::MalformedEvent(text.to_string());
        let lookup =
            |name: &str| self.prop(name).ok_or_else(|| AlphabetError::UnknownProposition(name.to_string()));
        if let Some(inner) = text.strip_prefix('{') {
            let inner = inner.strip_suffix('}').ok_or_else(malformed)?;
            if self.mode == Mode::RawSymbol {
                return Err(malformed());
            }
            let mut mask = 0u32;
            for part in inner.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    return Err(malformed());
                }
                mask |= 1 << lookup(part)?.0;
            }
            Ok(Event(mask))
        } else {
            if !is_prop_name(text) {
                return Err(malformed());
            }
            Ok(Event(1 << lookup(text)?.0))
        }
    }

    /// Renders an event in the syntax accepted by
    /// [`Interpretation::parse_event`].
    pub fn event_name(&self, e: Event) -> String {
        match self.mode {
            Mode::RawSymbol if e.0.is_power_of_two() => self.props[e.0.trailing_zeros() as usize].clone(),
            _ => {
                let mut out = String::from("{");
                let mut first = true;
                for (i, p) in self.props.iter().enumerate() {
                    if e.0 & (1 << i) != 0 {
                        if !first {
                            out.push(',');
                        }
                        out.push_str(p);
                        first = false;
                    }
                }
                out.push('}');
                out
            }
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Valuation => "valuation",
            Mode::RawSymbol => "raw",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_alphabet() {
        let i = Interpretation::valuation(&["a", "b"]).unwrap();
        assert_eq!(i.num_events(), 3);
        let evs: Vec<_> = i.events().map(|e| i.event_name(e)).collect();
        assert_eq!(evs, ["{a}", "{b}", "{a,b}"]);
        let ab = i.parse_event("{a, b}").unwrap();
        assert!(ab.satisfies(Prop(0)) && ab.satisfies(Prop(1)));
        assert_eq!(i.event_index(ab), Some(2));
        assert_eq!(i.parse_event("a").unwrap(), Event(1));
        assert_eq!(i.event_index(Event(4)), None);
        assert_eq!(i.event_index(Event(0)), None);
    }

    #[test]
    fn raw_alphabet() {
        let i = Interpretation::raw(&["a", "b", "c", "d"]).unwrap();
        assert_eq!(i.num_events(), 4);
        let c = i.parse_event("c").unwrap();
        assert_eq!(i.event_index(c), Some(2));
        assert!(c.satisfies(Prop(2)) && !c.satisfies(Prop(0)));
        assert_eq!(i.event_index(Event(3)), None);
        assert!(matches!(i.parse_event("{a}"), Err(AlphabetError::MalformedEvent(_))));
        assert!(matches!(i.parse_event("e"), Err(AlphabetError::UnknownProposition(_))));
    }

    #[test]
    fn rejects_bad_declarations() {
        assert_eq!(Interpretation::raw::<&str>(&[]), Err(AlphabetError::Empty));
        assert!(matches!(Interpretation::raw(&["a", "a"]), Err(AlphabetError::Duplicate(_))));
        assert!(matches!(Interpretation::raw(&["A"]), Err(AlphabetError::InvalidName(_))));
        assert!(matches!(Interpretation::raw(&["true"]), Err(AlphabetError::InvalidName(_))));
        let many: Vec<_> = (0..13).map(|i| alloc::format!("p{i}")).collect();
        assert!(matches!(Interpretation::valuation(&many), Err(AlphabetError::TooMany { .. })));
    }
}

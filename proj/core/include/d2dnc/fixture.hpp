#pragma once

#include <iosfwd>
#include <string>

#include "d2dnc/model.hpp"

namespace d2dnc {

/// A fully specified network instance loaded from (or written to) the
/// line-oriented fixture format:
///
///   players N packets M
///   wants u: p,p,...     one line per player, 1-indexed ids, empty list ok
///   edges: (u,v)(u,v)...
///   sigma default X
///   sigma u v X          optional per-directed-link overrides
///   epsilon X            optional, defaults to 0
///
/// Blank lines and '#' comments are ignored. Serialization emits the
/// canonical form above, so parse(serialize(f)) == f bit for bit.
struct Fixture {
    StateMatrix state;
    Topology topology;
    ErasureModel erasures;

    bool operator==(const Fixture& o) const = default;
};

Fixture parse_fixture(std::istream& in);
Fixture load_fixture(const std::string& path);

std::string serialize_fixture(const Fixture& f);
void save_fixture(const Fixture& f, const std::string& path);

}  // namespace d2dnc

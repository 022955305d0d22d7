#pragma once

#include <string>
#include <vector>

#include "pythreg/concentration.hpp"
#include "pythreg/counting.hpp"
#include "pythreg/pair_averages.hpp"
#include "pythreg/pretentious.hpp"
#include "pythreg/triples.hpp"
#include "pythreg/weights.hpp"

namespace pythreg {

// Compact JSON text for each report type; complex numbers become
// {"re": .., "im": ..}.
std::string to_json(const DistanceReport& r);
std::string to_json(const ConcentrationReport& r);
std::string to_json(const TkReport& r);
std::string to_json(const CountingReport& r);
std::string to_json(const PairAverageReport& r);
std::string to_json(const TripleSearchResult& r);
std::string to_json(const FolnerSet& s);

}  // namespace pythreg

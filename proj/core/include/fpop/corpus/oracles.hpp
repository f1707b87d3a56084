//  Copyright 2026 The fpop Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.


#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fpop/corpus/instances.hpp"

namespace fpop::corpus {

/// Bellman-Ford relaxation until stable.
std::map<std::string, ExtNat> oracle_shortest_paths(const GraphInstance& g);

/// Table filling on the completed automaton, then blocks of the reachable
/// live states.
Value oracle_minimize(const DfaInstance& d);

/// Exhaustive chart: relaxes every production over every span until no
/// entry appears or improves.
ParseChart oracle_cyk(const CnfGrammar& g, const std::vector<std::string>& input);

/// Accepting states, then heads of hyperedges whose children are all in
/// the set, until stable.
std::set<std::string> oracle_tree_not_rejects_all(const TreeAutomatonInstance& t);

}  // namespace fpop::corpus

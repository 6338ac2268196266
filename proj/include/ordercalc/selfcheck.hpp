#pragma once

#include <string>
#include <vector>

#include "ordercalc/family_io.hpp"

namespace ordercalc {

// Outcome of one self-check suite.  `detail` names the first offending
// instance when the check fails and is empty otherwise.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// A corpus entry: file name (for reporting) plus its parsed description.
struct CorpusEntry {
    std::string name;
    FamilyDoc doc;
};

// Loads every *.fam file under `dir`, sorted by file name.
std::vector<CorpusEntry> load_corpus(const std::string& dir);

// The corpus directory: $ORDERTYPE_CORPUS when set, else "corpus".
std::string corpus_dir_from_env();

// Runs the full self-check battery over the bundled corpus: the classifier
// golden table, the beta/xi rearrangement oracle, the split-minimum law, the
// canonisation laws, flip soundness for every colouring, selector coherence,
// the homogeneity transfer identities, the position-code bijection, the CNF
// algebra laws and the leading-component equivalence.  One result per suite,
// in that order.
std::vector<CheckResult> run_selfchecks(const std::string& corpus_dir);

}  // namespace ordercalc

#pragma once

#include <string>

namespace imgql::harness {

// Scripts shipped inside the binary: the shared operator library and the
// nevus segmentation pipeline. `corpus_lookup` resolves them by file
// name for imports and for running without files on disk.
const std::string& stdlib_script();
const std::string& nevus_script();

const std::string* corpus_lookup(const std::string& name);

}  // namespace imgql::harness

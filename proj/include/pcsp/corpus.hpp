#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcsp/core.hpp"
#include "pcsp/polymorphism.hpp"

namespace pcsp {

/// Built-in templates: 2sat, horn, dualhorn, 3lin, 1in3-nae, cycles23, k3.
std::vector<std::string> corpus_names();

/// The template document; throws ValidationError for unknown names.
std::string corpus_document(std::string_view name);
PromiseTemplate corpus_template(std::string_view name);

/// The built-in family known to be a polymorphism of the corpus template at
/// every available arity, if any (AT for 1in3-nae).
std::optional<Family> corpus_family(std::string_view name);

}  // namespace pcsp

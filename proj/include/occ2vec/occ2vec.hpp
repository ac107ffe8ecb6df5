#pragma once

// Everything except the HTTP client (remote_embedder.hpp), which pulls in
// cpp-httplib and nlohmann/json.

#include "occ2vec/aggregate.hpp"
#include "occ2vec/bert_toy.hpp"
#include "occ2vec/catalog.hpp"
#include "occ2vec/catalog_io.hpp"
#include "occ2vec/characteristic.hpp"
#include "occ2vec/composite.hpp"
#include "occ2vec/correlation.hpp"
#include "occ2vec/csv.hpp"
#include "occ2vec/embedding.hpp"
#include "occ2vec/embedding_cache.hpp"
#include "occ2vec/error.hpp"
#include "occ2vec/labor_stats.hpp"
#include "occ2vec/moments.hpp"
#include "occ2vec/ols.hpp"
#include "occ2vec/onet_ingest.hpp"
#include "occ2vec/pca.hpp"
#include "occ2vec/random.hpp"
#include "occ2vec/scoring.hpp"
#include "occ2vec/smooth.hpp"
#include "occ2vec/svg.hpp"
#include "occ2vec/ttest.hpp"
#include "occ2vec/tsne.hpp"
#include "occ2vec/validation.hpp"

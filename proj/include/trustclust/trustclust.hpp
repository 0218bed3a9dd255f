#pragma once

#include "trustclust/clustering/demographics.hpp"
#include "trustclust/clustering/kmeans.hpp"
#include "trustclust/clustering/pca.hpp"
#include "trustclust/clustering/standardizer.hpp"
#include "trustclust/clustering/trust_clustering.hpp"
#include "trustclust/clustering/ttest.hpp"
#include "trustclust/data/catalog.hpp"
#include "trustclust/data/dataset.hpp"
#include "trustclust/data/types.hpp"
#include "trustclust/evaluation/criteria.hpp"
#include "trustclust/evaluation/folds.hpp"
#include "trustclust/evaluation/metrics.hpp"
#include "trustclust/evaluation/plots.hpp"
#include "trustclust/evaluation/report.hpp"
#include "trustclust/features/features.hpp"
#include "trustclust/models/least_squares.hpp"
#include "trustclust/models/serialization.hpp"
#include "trustclust/models/sigmoid.hpp"
#include "trustclust/models/trust_models.hpp"
#include "trustclust/synth/population.hpp"
#include "trustclust/util/error.hpp"
#include "trustclust/util/files.hpp"
#include "trustclust/util/stats.hpp"

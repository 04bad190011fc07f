#pragma once

#include "urdet/corpus.hpp"
#include "urdet/detector.hpp"
#include "urdet/error.hpp"
#include "urdet/io.hpp"
#include "urdet/stats.hpp"
#include "urdet/stylometry.hpp"
#include "urdet/text_norm.hpp"
#include "urdet/unicode.hpp"

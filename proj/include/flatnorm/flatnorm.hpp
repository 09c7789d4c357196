#ifndef FLATNORM_FLATNORM_HPP
#define FLATNORM_FLATNORM_HPP

#include "flatnorm/cover.hpp"
#include "flatnorm/delaunay.hpp"
#include "flatnorm/error.hpp"
#include "flatnorm/gallery.hpp"
#include "flatnorm/homology.hpp"
#include "flatnorm/io.hpp"
#include "flatnorm/linalg.hpp"
#include "flatnorm/norms.hpp"
#include "flatnorm/saddle.hpp"
#include "flatnorm/surface.hpp"

#endif  // FLATNORM_FLATNORM_HPP

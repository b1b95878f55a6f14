#pragma once

#define QUADRILLE_VERSION "0.1.0"

# Tests del toolkit de segmentación

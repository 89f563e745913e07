"""Entanglement detection, shadow-tomography constants, uncertainty relations and energy bounds."""
